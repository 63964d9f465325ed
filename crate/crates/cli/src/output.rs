//! Trajectory and matrix export: CSV and a dependency-free SVG line plot.

use crate::report::sig6;
use netvuln::realize::AugmentedRealization;
use netvuln::simulate::Trajectory;
use std::fmt::Write as _;

/// `t,label1,...` with one row per sample.
pub fn trajectory_csv(traj: &Trajectory) -> String {
    let mut out = String::new();
    out.push('t');
    for label in &traj.labels {
        out.push(',');
        out.push_str(label);
    }
    out.push('\n');
    for (t, state) in traj.times.iter().zip(&traj.states) {
        let _ = write!(out, "{}", sig6(*t));
        for v in state {
            let _ = write!(out, ",{}", sig6(*v));
        }
        out.push('\n');
    }
    out
}

/// `label,a_1,...,a_n,b` rows for the augmented system.
pub fn augmented_csv(aug: &AugmentedRealization) -> String {
    let mut out = String::from("label");
    for label in &aug.labels {
        let _ = write!(out, ",{label}");
    }
    out.push_str(",b\n");
    for (i, row) in aug.a_tilde.iter().enumerate() {
        let _ = write!(out, "{}", aug.labels[i]);
        for v in row {
            let _ = write!(out, ",{}", sig6(*v));
        }
        let _ = writeln!(out, ",{}", sig6(aug.b_tilde[i]));
    }
    out
}

const PALETTE: [&str; 10] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf",
    "#bcbd22", "#7f7f7f",
];

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const MARGIN_L: f64 = 70.0;
const MARGIN_R: f64 = 130.0;
const MARGIN_T: f64 = 30.0;
const MARGIN_B: f64 = 50.0;
/// Samples above this are strided down so figures stay reviewable.
const MAX_POINTS: usize = 1200;

fn ticks(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    (0..=count)
        .map(|k| lo + (hi - lo) * k as f64 / count as f64)
        .collect()
}

/// SVG 1.1 line plot: one polyline per state, legend from labels,
/// auto-scaled axes. Byte-stable for a given trajectory.
pub fn trajectory_svg(traj: &Trajectory) -> String {
    let n_states = traj.labels.len();
    let stride = traj.times.len().div_ceil(MAX_POINTS).max(1);
    let idx: Vec<usize> = (0..traj.times.len())
        .step_by(stride)
        .chain(std::iter::once(traj.times.len() - 1))
        .collect();

    let t_lo = traj.times.first().copied().unwrap_or(0.0);
    let t_hi = traj.times.last().copied().unwrap_or(1.0).max(t_lo + 1e-9);
    let mut y_lo = f64::INFINITY;
    let mut y_hi = f64::NEG_INFINITY;
    for state in &traj.states {
        for &v in state {
            y_lo = y_lo.min(v);
            y_hi = y_hi.max(v);
        }
    }
    if !(y_lo.is_finite() && y_hi.is_finite()) {
        y_lo = -1.0;
        y_hi = 1.0;
    }
    if y_hi - y_lo < 1e-12 {
        y_lo -= 0.5;
        y_hi += 0.5;
    }
    let pad = 0.05 * (y_hi - y_lo);
    y_lo -= pad;
    y_hi += pad;

    let px = |t: f64| MARGIN_L + (t - t_lo) / (t_hi - t_lo) * (WIDTH - MARGIN_L - MARGIN_R);
    let py = |y: f64| HEIGHT - MARGIN_B - (y - y_lo) / (y_hi - y_lo) * (HEIGHT - MARGIN_T - MARGIN_B);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">"
    );
    let _ = writeln!(
        svg,
        "  <rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>"
    );

    // Axes and grid.
    let x0 = MARGIN_L;
    let x1 = WIDTH - MARGIN_R;
    let y0 = HEIGHT - MARGIN_B;
    let y1 = MARGIN_T;
    for t in ticks(t_lo, t_hi, 5) {
        let x = px(t);
        let _ = writeln!(
            svg,
            "  <line x1=\"{x:.2}\" y1=\"{y0:.2}\" x2=\"{x:.2}\" y2=\"{y1:.2}\" stroke=\"#dddddd\" stroke-width=\"1\"/>"
        );
        let _ = writeln!(
            svg,
            "  <text x=\"{x:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">{}</text>",
            y0 + 18.0,
            sig6(t)
        );
    }
    for y in ticks(y_lo, y_hi, 5) {
        let yy = py(y);
        let _ = writeln!(
            svg,
            "  <line x1=\"{x0:.2}\" y1=\"{yy:.2}\" x2=\"{x1:.2}\" y2=\"{yy:.2}\" stroke=\"#dddddd\" stroke-width=\"1\"/>"
        );
        let _ = writeln!(
            svg,
            "  <text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"end\">{}</text>",
            x0 - 8.0,
            yy + 4.0,
            sig6(y)
        );
    }
    let _ = writeln!(
        svg,
        "  <line x1=\"{x0:.2}\" y1=\"{y0:.2}\" x2=\"{x1:.2}\" y2=\"{y0:.2}\" stroke=\"black\" stroke-width=\"1.5\"/>"
    );
    let _ = writeln!(
        svg,
        "  <line x1=\"{x0:.2}\" y1=\"{y0:.2}\" x2=\"{x0:.2}\" y2=\"{y1:.2}\" stroke=\"black\" stroke-width=\"1.5\"/>"
    );
    let _ = writeln!(
        svg,
        "  <text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">t</text>",
        (x0 + x1) / 2.0,
        HEIGHT - 12.0
    );

    // Curves.
    for s in 0..n_states {
        let color = PALETTE[s % PALETTE.len()];
        let mut points = String::new();
        for &k in &idx {
            let v = traj.states[k][s];
            if !v.is_finite() {
                break;
            }
            let _ = write!(points, "{:.2},{:.2} ", px(traj.times[k]), py(v));
        }
        let _ = writeln!(
            svg,
            "  <polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\" points=\"{}\"/>",
            points.trim_end()
        );
    }

    // Legend.
    for (s, label) in traj.labels.iter().enumerate() {
        let color = PALETTE[s % PALETTE.len()];
        let ly = MARGIN_T + 16.0 * s as f64 + 10.0;
        let lx = WIDTH - MARGIN_R + 14.0;
        let _ = writeln!(
            svg,
            "  <line x1=\"{lx:.2}\" y1=\"{ly:.2}\" x2=\"{:.2}\" y2=\"{ly:.2}\" stroke=\"{color}\" stroke-width=\"2\"/>",
            lx + 22.0
        );
        let _ = writeln!(
            svg,
            "  <text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"12\">{label}</text>",
            lx + 28.0,
            ly + 4.0
        );
    }
    svg.push_str("</svg>\n");
    svg
}
