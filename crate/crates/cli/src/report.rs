//! Report structures and numeric formatting.
//!
//! Every float printed to the terminal or a report uses six significant
//! digits; exact rational forms ride along wherever the pipeline has them.

use netvuln::hinf::WorstFrequency;
use netvuln::perturb::{LinkCandidate, LinkPerturbation};
use netvuln::ratfun::format_rational;
use netvuln::realize::{AugmentedRealization, InstabilityReport};
use num_complex::Complex64;
use serde::Serialize;

/// Six significant digits, plain notation where reasonable.
pub fn sig6(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let mag = x.abs().log10().floor() as i32;
    if (-4..6).contains(&mag) {
        let decimals = (5 - mag).max(0) as usize;
        let s = format!("{x:.decimals$}");
        // Trim trailing zeros but keep at least one digit after the point.
        if s.contains('.') {
            let t = s.trim_end_matches('0');
            let t = t.strip_suffix('.').unwrap_or(t);
            t.to_string()
        } else {
            s
        }
    } else {
        format!("{x:.5e}")
    }
}

pub fn fmt_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        sig6(z.re)
    } else if z.im > 0.0 {
        format!("{}+{}i", sig6(z.re), sig6(z.im))
    } else {
        format!("{}-{}i", sig6(z.re), sig6(-z.im))
    }
}

pub fn fmt_frequency(w: &WorstFrequency) -> String {
    match w {
        WorstFrequency::Finite(w) => sig6(*w),
        WorstFrequency::Infinity => "inf".into(),
    }
}

#[derive(Serialize)]
pub struct VulnerabilityRow {
    /// 1-based source state index.
    pub i: usize,
    /// 1-based target state index.
    pub j: usize,
    pub source: String,
    pub target: String,
    pub existing: bool,
    pub vulnerability: String,
    pub worst_frequency: String,
}

pub fn vulnerability_rows(cands: &[LinkCandidate], labels: &[String]) -> Vec<VulnerabilityRow> {
    cands
        .iter()
        .map(|c| VulnerabilityRow {
            i: c.source_state + 1,
            j: c.target_state + 1,
            source: labels[c.source_state].clone(),
            target: labels[c.target_state].clone(),
            existing: c.existing,
            vulnerability: sig6(c.vulnerability),
            worst_frequency: fmt_frequency(&c.worst_frequency),
        })
        .collect()
}

pub fn print_table(rows: &[VulnerabilityRow]) {
    if rows.is_empty() {
        eprintln!("warning: no admissible links in this mode");
        return;
    }
    println!(
        "{:>4} {:>4}  {:<8} {:<8} {:<8} {:>12} {:>10}",
        "i", "j", "source", "target", "existing", "V", "w*"
    );
    for r in rows {
        println!(
            "{:>4} {:>4}  {:<8} {:<8} {:<8} {:>12} {:>10}",
            r.i, r.j, r.source, r.target, r.existing, r.vulnerability, r.worst_frequency
        );
    }
}

#[derive(Serialize)]
pub struct StabilitySection {
    pub verdict: String,
    pub spectrum: Vec<String>,
}

#[derive(Serialize)]
pub struct PerturbationSection {
    pub link_i: usize,
    pub link_j: usize,
    pub delta: String,
    pub gain_exact: String,
    pub sign: i8,
    pub allpass_pole: String,
    pub allpass_order: u32,
    pub epsilon: String,
}

pub fn perturbation_section(pert: &LinkPerturbation) -> PerturbationSection {
    PerturbationSection {
        link_i: pert.source_state + 1,
        link_j: pert.target_state + 1,
        delta: pert.entry.to_string(),
        gain_exact: format_rational(&pert.gain),
        sign: pert.sign,
        allpass_pole: format_rational(&pert.allpass_pole),
        allpass_order: pert.allpass_order,
        epsilon: format_rational(&pert.epsilon),
    }
}

#[derive(Serialize)]
pub struct AugmentedSection {
    pub labels: Vec<String>,
    pub a_tilde: Vec<Vec<String>>,
    pub b_tilde: Vec<String>,
    pub spectrum: Vec<String>,
    pub leading_eigenvalue: String,
    pub verdict: String,
}

pub fn augmented_section(aug: &AugmentedRealization, rep: &InstabilityReport) -> AugmentedSection {
    AugmentedSection {
        labels: aug.labels.clone(),
        a_tilde: aug
            .a_tilde
            .iter()
            .map(|row| row.iter().map(|&x| sig6(x)).collect())
            .collect(),
        b_tilde: aug.b_tilde.iter().map(|&x| sig6(x)).collect(),
        spectrum: rep.spectrum.iter().map(|&z| fmt_complex(z)).collect(),
        leading_eigenvalue: fmt_complex(rep.leading_eigenvalue),
        verdict: rep.verdict.to_string(),
    }
}

#[derive(Serialize)]
pub struct AnalysisReport {
    pub states: Vec<String>,
    pub exposed: Vec<String>,
    pub stability: StabilitySection,
    pub mode: String,
    pub vulnerabilities: Vec<VulnerabilityRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub perturbation: Option<PerturbationSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub augmented: Option<AugmentedSection>,
}

pub fn to_json(report: &AnalysisReport) -> String {
    let mut out = serde_json::to_string_pretty(report).expect("report serializes");
    out.push('\n');
    out
}
