//! End-to-end checks on the five-agent case-study system: DSF structure,
//! link vulnerabilities, perturbation synthesis, time-domain realization,
//! and simulation behavior.

mod common;

use common::{q, rf, study_model, sweep_norm};
use netvuln::dsf::{self, DsfPair};
use netvuln::hinf::{self, hinf_norm, StabilityVerdict, WorstFrequency};
use netvuln::netmodel::{
    self, build_taylor_model, validate_model, InfluenceEdge, PersuasibilityEntry,
    SocialNetworkSpec, SourceSpec,
};
use netvuln::perturb::{self, LinkPerturbation, PerturbMode};
use netvuln::ratfun::{partial_fractions, Polynomial, RationalFunction, TransferMatrix};
use netvuln::realize;
use netvuln::simulate;
use num::rational::BigRational;
use num::Zero;
use num_complex::Complex64;

fn study_dsf() -> (netvuln::netmodel::LinearModel, DsfPair, TransferMatrix) {
    let model = study_model();
    let pair = dsf::compute_dsf(&dsf::partition(&model).unwrap()).unwrap();
    let h = dsf::h_matrix(&pair).unwrap();
    (model, pair, h)
}

fn top_perturbation(mode: PerturbMode, epsilon: &str) -> (netvuln::netmodel::LinearModel, DsfPair, TransferMatrix, LinkPerturbation) {
    let (model, pair, h) = study_dsf();
    let cands = perturb::vulnerability_map(&h, &model, mode).unwrap();
    let c = &cands[0];
    let pert = perturb::synthesize_delta(
        c,
        h.get(c.source_pos, c.target_pos),
        q(epsilon),
        q("1"),
        2,
    )
    .unwrap();
    (model, pair, h, pert)
}

#[test]
fn taylor_construction_reconstructs_the_study_system() {
    // One consistent decomposition: gamma = (.1,.6,.1,.6,.1), two sources
    // with sentiments -1 and 2/3, agents {1,3,5} tuned to the first and
    // {2,4} to the second.
    let agents: Vec<String> = (1..=5).map(|i| format!("x{i}")).collect();
    let mut edges = Vec::new();
    for (i, row) in common::STUDY_A.iter().enumerate() {
        for (j, w) in row.iter().enumerate() {
            if i != j && !q(w).is_zero() {
                edges.push(InfluenceEdge {
                    source: agents[j].clone(),
                    target: agents[i].clone(),
                    weight: q(w),
                });
            }
        }
    }
    let gamma = ["0.1", "0.6", "0.1", "0.6", "0.1"];
    let persuasibility = (0..5)
        .map(|i| PersuasibilityEntry {
            agent: agents[i].clone(),
            source: if i % 2 == 0 { "s1".into() } else { "s2".into() },
            weight: q(gamma[i]),
        })
        .collect();
    let spec = SocialNetworkSpec {
        agents: agents.clone(),
        edges,
        sources: vec![
            SourceSpec {
                name: "s1".into(),
                sentiment: q("-1"),
            },
            SourceSpec {
                name: "s2".into(),
                sentiment: q("2/3"),
            },
        ],
        persuasibility,
    };
    let built = build_taylor_model(&spec).unwrap();
    let expect = study_model();
    assert_eq!(built.a(), expect.a());
    assert_eq!(built.b(), expect.b());
}

#[test]
fn base_system_is_asymptotically_stable() {
    let model = study_model();
    let diag = validate_model(&model);
    assert_eq!(diag.verdict, StabilityVerdict::Stable);
    assert!(diag.spectrum.iter().all(|e| e.re < -1e-3));
    assert!(diag.nonnegative_off_diagonals);
}

#[test]
fn partition_blocks_match_the_study_matrix() {
    let model = study_model().with_exposed(vec![0, 1, 2]).unwrap();
    let pm = dsf::partition(&model).unwrap();
    let a22: Vec<Vec<BigRational>> = vec![
        vec![q("-1.6"), q(".4")],
        vec![q(".2"), q("-.7")],
    ];
    assert_eq!(pm.a22, a22);

    let model = study_model().with_exposed(vec![1, 4]).unwrap();
    let pm = dsf::partition(&model).unwrap();
    let a11: Vec<Vec<BigRational>> = vec![
        vec![q("-1.6"), q(".6")],
        vec![q(".4"), q("-.7")],
    ];
    assert_eq!(pm.a11, a11);
}

#[test]
fn full_exposure_q_entry() {
    let (_, pair, _) = study_dsf();
    assert_eq!(pair.q.get(0, 1), &rf(&["0.2"], &["0.7", "1"]));
    for i in 0..5 {
        assert!(pair.q.get(i, i).is_zero());
    }
}

#[test]
fn dsf_reconstruction_identity_is_exact() {
    // (sI - D)(I - Q) = sI - Qtilde, with Qtilde = A under full exposure.
    let (model, pair, _) = study_dsf();
    let n = model.dim();
    let s = RationalFunction::from_polynomial(Polynomial::variable());
    let mut s_minus_d = TransferMatrix::zeros(n, n);
    for i in 0..n {
        s_minus_d.set(i, i, &s - pair.d.get(i, i));
    }
    let lhs = s_minus_d.mul(&TransferMatrix::identity(n).sub(&pair.q));
    let rhs = TransferMatrix::s_identity_minus(model.a());
    assert_eq!(lhs, rhs);
}

#[test]
fn h_matches_closed_form_and_exact_dc_value() {
    let (model, pair, h) = study_dsf();
    // H52(0) = 1128/1051 exactly.
    assert_eq!(
        h.get(4, 1).eval_rational(&BigRational::zero()).unwrap(),
        q("1128/1051")
    );
    // Closed form H = (sI - A)^-1 (sI - D) sampled off-axis.
    let resolvent = TransferMatrix::s_identity_minus(model.a())
        .inverse()
        .unwrap();
    let n = model.dim();
    let s = RationalFunction::from_polynomial(Polynomial::variable());
    let mut s_minus_d = TransferMatrix::zeros(n, n);
    for i in 0..n {
        s_minus_d.set(i, i, &s - pair.d.get(i, i));
    }
    let closed_form = resolvent.mul(&s_minus_d);
    for z in [
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, 2.0),
        Complex64::new(-0.1, 1.0),
    ] {
        for i in 0..n {
            for j in 0..n {
                let a = h.get(i, j).eval_complex(z).unwrap();
                let b = closed_form.get(i, j).eval_complex(z).unwrap();
                assert!((a - b).norm() < 1e-10 * (1.0 + a.norm()));
            }
        }
    }
}

#[test]
fn inverse_product_sampled_is_identity() {
    let (_, pair, h) = study_dsf();
    let n = h.rows();
    let product = TransferMatrix::identity(n).sub(&pair.q).mul(&h);
    for z in [
        Complex64::new(1.0, 1.0),
        Complex64::new(2.0, 0.0),
        Complex64::new(0.0, 3.0),
    ] {
        let sampled = product.eval_complex(z).unwrap();
        for (i, row) in sampled.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((v - expect).norm() < 1e-10);
            }
        }
    }
}

#[test]
fn g_matches_numeric_resolvent() {
    let (model, pair, _) = study_dsf();
    let g = dsf::transfer_function(&pair).unwrap();
    let n = model.dim();
    let a = model.a_f64();
    for z in [
        Complex64::new(0.9, 0.4),
        Complex64::new(-0.2, 2.2),
        Complex64::new(3.0, -1.0),
    ] {
        let m = nalgebra::DMatrix::from_fn(n, n, |i, j| {
            let d = if i == j { z } else { Complex64::new(0.0, 0.0) };
            d - Complex64::new(a[i][j], 0.0)
        });
        let inv = m.try_inverse().unwrap();
        for i in 0..n {
            for j in 0..n {
                let got = g.get(i, j).eval_complex(z).unwrap();
                let expect = inv[(i, j)];
                assert!((got - expect).norm() < 1e-10 * (1.0 + expect.norm()));
            }
        }
    }
}

#[test]
fn g_is_invariant_to_hiding_one_state() {
    let full = study_model();
    let g_full = dsf::transfer_function(
        &dsf::compute_dsf(&dsf::partition(&full).unwrap()).unwrap(),
    )
    .unwrap();
    let partial = full.with_exposed(vec![0, 1, 2, 3]).unwrap();
    let g_part = dsf::transfer_function(
        &dsf::compute_dsf(&dsf::partition(&partial).unwrap()).unwrap(),
    )
    .unwrap();
    for z in [
        Complex64::new(1.0, 1.0),
        Complex64::new(0.0, 2.0),
        Complex64::new(3.0, 0.0),
    ] {
        for i in 0..4 {
            for j in 0..5 {
                let a = g_full.get(i, j).eval_complex(z).unwrap();
                let b = g_part.get(i, j).eval_complex(z).unwrap();
                assert!((a - b).norm() < 1e-10 * (1.0 + a.norm()));
            }
        }
    }
}

#[test]
fn vulnerability_rankings_match_known_values() {
    let (model, _, h) = study_dsf();
    let existing = perturb::vulnerability_map(&h, &model, PerturbMode::Existing).unwrap();
    let top = &existing[0];
    assert_eq!((top.source_state, top.target_state), (4, 1)); // link (5,2)
    let v52 = 1128.0 / 1051.0;
    assert!((top.vulnerability - v52).abs() < 1e-6 * v52);
    assert!(matches!(top.worst_frequency, WorstFrequency::Finite(w) if w == 0.0));
    // Sweep oracle confirms the maximizer at zero frequency.
    let (sweep_max, _) = sweep_norm(h.get(4, 1), 2000);
    assert!((sweep_max - v52).abs() < 1e-6 * v52);

    let created = perturb::vulnerability_map(&h, &model, PerturbMode::Created).unwrap();
    let top = &created[0];
    assert_eq!((top.source_state, top.target_state), (1, 1)); // link (2,2)
    let v22 = 1680.0 / 1051.0;
    assert!((top.vulnerability - v22).abs() < 1e-6 * v22);
    // Superset monotonicity.
    assert!(created[0].vulnerability >= existing[0].vulnerability);
    // Every existing candidate is an off-diagonal nonzero of A.
    for c in &existing {
        assert!(c.existing);
        assert!(!model.a()[c.target_state][c.source_state].is_zero());
        assert_ne!(c.source_state, c.target_state);
    }
    assert_eq!(created.len(), 25);
}

#[test]
fn synthesized_deltas_reproduce_known_forms() {
    // Existing link at eps=0: (1051/1128) ((1-s)/(1+s))^2.
    let (_, _, _, pert) = top_perturbation(PerturbMode::Existing, "0");
    let expect = rf(&["1", "-1"], &["1", "1"]).pow(2).scale(&q("1051/1128"));
    assert_eq!(pert.entry, expect);
    assert_eq!(pert.gain, q("1051/1128"));
    assert_eq!(pert.sign, 1);
    assert_eq!((pert.target_state, pert.source_state), (1, 4));

    // Created link at eps=0: (1051/1680) ((s-1)/(s+1))^2 (same square).
    let (_, _, _, pert) = top_perturbation(PerturbMode::Created, "0");
    let expect = rf(&["-1", "1"], &["1", "1"]).pow(2).scale(&q("1051/1680"));
    assert_eq!(pert.entry, expect);
    assert_eq!((pert.target_state, pert.source_state), (1, 1));
}

#[test]
fn partial_fraction_coefficients_match_reported_values() {
    for (mode, expect) in [
        (PerturbMode::Existing, [0.932, -2.236, 1.491, 2.236]),
        (PerturbMode::Created, [0.626, -1.501, 1.001, 1.501]),
    ] {
        let (_, pair, _, pert) = top_perturbation(mode, "0");
        let jp = pert.target_pos;
        let s = RationalFunction::from_polynomial(Polynomial::variable());
        let d_fun = &(&s - pair.d.get(jp, jp)) * &pert.entry;
        let form = partial_fractions(&d_fun).unwrap();
        let alpha = netvuln::ratfun::to_f64(&form.polynomial_part.coeff(1));
        let beta = netvuln::ratfun::to_f64(&form.polynomial_part.coeff(0));
        assert_eq!(form.terms.len(), 1);
        let term = &form.terms[0];
        assert_eq!(term.multiplicity, 2);
        assert!((term.pole - Complex64::new(-1.0, 0.0)).norm() < 1e-9);
        let got = [alpha, beta, term.residues[0].re, term.residues[1].re];
        for (g, e) in got.iter().zip(expect.iter()) {
            assert!((g - e).abs() < 5e-4, "{mode:?}: got {g}, reported {e}");
        }
    }
}

#[test]
fn augmented_matrix_rows_match_reported_values() {
    let (model, pair, _, pert) = top_perturbation(PerturbMode::Existing, ".001");
    let aug = realize::unwind(&model, &pair, &pert).unwrap();
    let expect_row2 = [0.2, -1.227, 0.2, 0.187, -2.291, 1.492, 2.238];
    for (got, e) in aug.a_tilde[1].iter().zip(expect_row2.iter()) {
        assert!((got - e).abs() < 5e-4, "existing row 2: {got} vs {e}");
    }
    assert_eq!(aug.a_tilde[5], vec![0.0, 0.0, 0.0, 0.0, 1.0, -1.0, 0.0]);
    assert_eq!(aug.a_tilde[6], vec![0.0, 0.0, 0.0, 0.0, 0.0, 1.0, -1.0]);
    assert_eq!(aug.labels[5..], ["p".to_string(), "q".to_string()]);
    // Rows other than the perturbed one carry A unchanged.
    for i in [0usize, 2, 3, 4] {
        for j in 0..5 {
            assert_eq!(aug.a_tilde[i][j], model.a_f64()[i][j]);
        }
    }

    let (model, pair, _, pert) = top_perturbation(PerturbMode::Created, ".001");
    let aug = realize::unwind(&model, &pair, &pert).unwrap();
    let expect_row2 = [0.535, -8.302, 0.535, 0.0, 1.605, 2.681, 4.021];
    for (got, e) in aug.a_tilde[1].iter().zip(expect_row2.iter()) {
        assert!((got - e).abs() < 1e-2, "created row 2: {got} vs {e}");
    }
    assert_eq!(aug.a_tilde[5], vec![0.0, 1.0, 0.0, 0.0, 0.0, -1.0, 0.0]);
    assert_eq!(aug.a_tilde[6], vec![0.0, 0.0, 0.0, 0.0, 0.0, 1.0, -1.0]);
}

fn assert_spectrum_matches(
    spectrum: &[Complex64],
    expected: &[Complex64],
    tol: f64,
) {
    // Match all reported stable eigenvalues; the small unstable one is
    // checked separately by sign.
    for e in expected {
        assert!(
            spectrum.iter().any(|s| (s - e).norm() < tol),
            "no eigenvalue near {e} (tol {tol}); spectrum {spectrum:?}"
        );
    }
}

#[test]
fn augmented_spectra_match_reported_values() {
    let (model, pair, _, pert) = top_perturbation(PerturbMode::Existing, ".001");
    let aug = realize::unwind(&model, &pair, &pert).unwrap();
    let report = realize::verify_instability(&aug);
    let expected: Vec<Complex64> = vec![
        Complex64::new(-0.308, 0.0),
        Complex64::new(-0.538, 0.0),
        Complex64::new(-1.625, 0.0),
        Complex64::new(-1.124, 1.175),
        Complex64::new(-1.124, -1.175),
        Complex64::new(-1.809, 0.0),
    ];
    assert_spectrum_matches(&report.spectrum, &expected, 5e-3);
    let lam = report.leading_eigenvalue;
    assert_eq!(lam.im, 0.0);
    assert!(lam.re > 0.0 && lam.re < 0.01, "lambda_eps = {lam}");
    assert_eq!(report.verdict, StabilityVerdict::Unstable);

    let (model, pair, _, pert) = top_perturbation(PerturbMode::Created, ".001");
    let aug = realize::unwind(&model, &pair, &pert).unwrap();
    let report = realize::verify_instability(&aug);
    let expected: Vec<Complex64> = vec![
        Complex64::new(-0.320, 0.0),
        Complex64::new(-0.452, 0.0),
        Complex64::new(-0.706, 0.0),
        Complex64::new(-1.587, 0.0),
        Complex64::new(-1.854, 0.0),
        Complex64::new(-8.683, 0.0),
    ];
    assert_spectrum_matches(&report.spectrum, &expected, 2e-2);
    let lam = report.leading_eigenvalue;
    assert!(lam.re > 0.0 && lam.re < 0.01);
}

#[test]
fn marginal_at_exact_threshold() {
    for mode in [PerturbMode::Existing, PerturbMode::Created] {
        let (model, pair, _, pert) = top_perturbation(mode, "0");
        let aug = realize::unwind(&model, &pair, &pert).unwrap();
        let report = realize::verify_instability(&aug);
        assert!(
            report.leading_eigenvalue.re.abs() <= 1e-6,
            "{mode:?}: max real part {} not within 1e-6 of zero",
            report.leading_eigenvalue.re
        );
    }
}

#[test]
fn small_gain_tightness_for_every_candidate() {
    let (model, _, h) = study_dsf();
    let cands = perturb::vulnerability_map(&h, &model, PerturbMode::Created).unwrap();
    for c in &cands {
        let h_ij = h.get(c.source_pos, c.target_pos);
        let pert = perturb::synthesize_delta(c, h_ij, q("0"), q("1"), 2).unwrap();
        let w = match c.worst_frequency {
            WorstFrequency::Finite(w) => w,
            WorstFrequency::Infinity => continue,
        };
        let loop_gain = (&pert.entry * h_ij)
            .eval_complex(Complex64::new(0.0, w))
            .unwrap();
        assert!(
            (loop_gain - Complex64::new(1.0, 0.0)).norm() <= 1e-8,
            "link ({}, {}): loop gain {loop_gain}",
            c.source_state + 1,
            c.target_state + 1
        );
        // Minimality certificate.
        let norm = hinf_norm(&pert.entry).unwrap();
        assert!((norm.value * c.vulnerability - 1.0).abs() <= 1e-9);
    }
}

#[test]
fn closed_loop_poles_appear_in_augmented_spectrum() {
    for mode in [PerturbMode::Existing, PerturbMode::Created] {
        let (model, pair, h, pert) = top_perturbation(mode, ".001");
        let g = dsf::transfer_function(&pair).unwrap();
        let gp = perturb::perturbed_transfer(&g, &h, &pert).unwrap();
        let aug = realize::unwind(&model, &pair, &pert).unwrap();
        let report = realize::verify_instability(&aug);
        let n = g.rows();
        for i in 0..n {
            for j in 0..n {
                for pole in netvuln::ratfun::poly_roots(gp.get(i, j).denominator()).unwrap() {
                    assert!(
                        report
                            .spectrum
                            .iter()
                            .any(|e| (e - pole.value).norm() < 1e-6),
                        "{mode:?}: pole {} of G'({i},{j}) missing from spectrum",
                        pole.value
                    );
                }
            }
        }
        // det(I - H Delta) vanishes at the unstable eigenvalue.
        let delta_h = &pert.entry * h.get(pert.source_pos, pert.target_pos);
        let det_at_lam = (&RationalFunction::one() - &delta_h)
            .eval_complex(report.leading_eigenvalue)
            .unwrap();
        assert!(
            det_at_lam.norm() <= 1e-6,
            "{mode:?}: |det| at lambda = {}",
            det_at_lam.norm()
        );
    }
}

#[test]
fn subthreshold_scaling_stays_stable() {
    let (model, pair, _, pert) = top_perturbation(PerturbMode::Existing, "0");
    let shrunk = LinkPerturbation {
        entry: pert.entry.scale(&q("0.9")),
        ..pert
    };
    let aug = realize::unwind(&model, &pair, &shrunk).unwrap();
    let report = realize::verify_instability(&aug);
    assert!(report
        .spectrum
        .iter()
        .all(|e| e.re <= 1e-9), "spectrum {:?}", report.spectrum);
}

#[test]
fn growth_rate_increases_with_epsilon() {
    for mode in [PerturbMode::Existing, PerturbMode::Created] {
        let mut last = f64::NEG_INFINITY;
        for eps in ["0", ".0005", ".001", ".002"] {
            let (model, pair, _, pert) = top_perturbation(mode, eps);
            let aug = realize::unwind(&model, &pair, &pert).unwrap();
            let lam = realize::verify_instability(&aug).leading_eigenvalue.re;
            assert!(lam > last, "{mode:?}: lambda({eps}) = {lam} not above {last}");
            last = lam;
        }
    }
}

#[test]
fn equilibrium_shows_persistent_dissent() {
    let model = study_model();
    let x = simulate::equilibrium(&model.a_f64(), &model.b_f64()).unwrap();
    let spread = x
        .iter()
        .fold(f64::NEG_INFINITY, |a, &b| a.max(b))
        - x.iter().fold(f64::INFINITY, |a, &b| a.min(b));
    assert!(spread > 1e-3, "equilibrium is near-consensus: {x:?}");
}

#[test]
fn unperturbed_trajectory_converges_to_equilibrium() {
    let model = study_model();
    let x0 = [0.5, 0.5, 0.0, -0.5, -0.5];
    let xeq = simulate::equilibrium(&model.a_f64(), &model.b_f64()).unwrap();
    let traj = simulate::simulate(
        &model.a_f64(),
        &model.b_f64(),
        &x0,
        100.0,
        0.01,
        model.labels().to_vec(),
    )
    .unwrap();
    for (t, state) in traj.times.iter().zip(&traj.states) {
        if *t < 60.0 {
            continue;
        }
        let dist = state
            .iter()
            .zip(&xeq)
            .map(|(a, b)| (a - b).powi(2))
            .sum::<f64>()
            .sqrt();
        assert!(dist <= 1e-6, "t = {t}: distance {dist}");
    }
}

#[test]
fn order_four_step_halving() {
    // Global error against the exact flow shrinks ~16x when dt halves.
    let model = study_model();
    let a = model.a_f64();
    let b = model.b_f64();
    let x0 = [0.5, 0.5, 0.0, -0.5, -0.5];
    let t_final = 5.0;
    let n = 5;
    let amat = nalgebra::DMatrix::from_fn(n, n, |i, j| a[i][j]);
    let xeq = simulate::equilibrium(&a, &b).unwrap();
    let exact: Vec<f64> = {
        let dev = nalgebra::DVector::from_fn(n, |i, _| x0[i] - xeq[i]);
        let flow = (amat * t_final).exp() * dev;
        (0..n).map(|i| flow[i] + xeq[i]).collect()
    };
    let mut errors = Vec::new();
    for dt in [0.2, 0.1, 0.05] {
        let traj =
            simulate::simulate(&a, &b, &x0, t_final, dt, model.labels().to_vec()).unwrap();
        let err = traj
            .final_state()
            .iter()
            .zip(&exact)
            .map(|(u, v)| (u - v).powi(2))
            .sum::<f64>()
            .sqrt();
        errors.push(err);
    }
    for pair in errors.windows(2) {
        let ratio = pair[0] / pair[1];
        assert!(
            ratio > 10.0 && ratio < 24.0,
            "step-halving ratio {ratio} outside order-4 band; errors {errors:?}"
        );
    }
}

#[test]
fn divergence_aligns_with_unstable_eigenvector() {
    let (model, pair, _, pert) = top_perturbation(PerturbMode::Existing, ".001");
    let aug = realize::unwind(&model, &pair, &pert).unwrap();
    let report = realize::verify_instability(&aug);
    let lam = report.leading_eigenvalue.re;
    // Eigenvector of lambda via inverse-iteration-free route: null space of
    // (A - lambda I) from nalgebra SVD.
    let dim = aug.a_tilde.len();
    let m = nalgebra::DMatrix::from_fn(dim, dim, |i, j| {
        aug.a_tilde[i][j] - if i == j { lam } else { 0.0 }
    });
    let svd = m.svd(true, true);
    let v_t = svd.v_t.unwrap();
    let eigvec: Vec<f64> = (0..dim).map(|i| v_t[(dim - 1, i)]).collect();

    let mut x0 = vec![0.5, 0.5, 0.0, -0.5, -0.5];
    x0.extend([0.0, 0.0]);
    let traj = simulate::simulate(&aug.a_tilde, &aug.b_tilde, &x0, 2000.0, 0.01, aug.labels.clone())
        .unwrap();
    let xf = traj.final_state();
    let dot: f64 = xf.iter().zip(&eigvec).map(|(a, b)| a * b).sum();
    let cosine = dot.abs() / (simulate::norm(xf) * simulate::norm(&eigvec));
    let angle = cosine.min(1.0).acos();
    assert!(angle < 1e-2, "angle to unstable eigenvector: {angle}");
}

#[test]
fn diagnostics_on_degenerate_models() {
    let marginal = netvuln::netmodel::LinearModel::new(
        vec![vec![q("0")]],
        vec![q("0")],
        None,
        None,
    )
    .unwrap();
    assert_eq!(
        netmodel::validate_model(&marginal).verdict,
        StabilityVerdict::Marginal
    );
    // Roots of the H52 denominator line up with eigenvalues of A minus
    // cancelled modes.
    let (model, _, h) = study_dsf();
    let eigs = hinf::spectrum_f64(&model.a_f64());
    for root in netvuln::ratfun::poly_roots(h.get(4, 1).denominator()).unwrap() {
        assert!(
            eigs.iter().any(|e| (e - root.value).norm() < 1e-6),
            "pole {} not an eigenvalue of A",
            root.value
        );
    }
}
