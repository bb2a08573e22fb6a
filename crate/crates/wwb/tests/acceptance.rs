//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the
//! per-criterion lines and the measured values. The criteria use the pinned
//! Monte Carlo sizes (mc_scale = 1), so this suite is the slow one; the
//! default seed makes every run reproducible.
//!
//! Criterion 3 gates log-log growth slopes of the homogeneous-family norms
//! at M_max = 24 against [0.85, 1.15] for pinned parameter sets and all
//! three family strategies. For several of those legs the per-level norm
//! increments are still far from their asymptote at M = 24 (the cross-term
//! buildup decays like (α·b^{2H−1})^M, e.g. 0.974^M for (k=3, α=0.9,
//! H=0.8), so the local log-log slope at M = 24 still exceeds 1.15), and
//! nested stacking adds an additive offset that a desk-scale log fit cannot
//! absorb. The norm values themselves are verified against the independent
//! quadrature route to ~1e−7; the test asserts the criterion as stated and
//! therefore fails, with the analysis in the failure text.

use wwb::report::{
    check_argmax, check_cov_mc, check_determinism, check_dimension, check_helix, check_hl,
    check_hls, check_hls_improvement, check_isometry, check_modulus_local,
    check_modulus_uniform, check_phi, check_positivity, check_roughness, check_tn, ArtifactSink,
    CheckResult, ExperimentConfig,
};

fn cfg() -> ExperimentConfig {
    ExperimentConfig::default()
}

fn report(criterion: &str, res: &CheckResult) -> bool {
    let status = if res.pass { "PASS" } else { "FAIL" };
    println!("ACCEPTANCE {criterion}: {status}");
    for m in &res.measurements {
        let tag = match m.pass {
            Some(true) => "ok",
            Some(false) => "FAIL",
            None => "info",
        };
        println!("  [{tag}] {} = {:.6e}  ({})", m.label, m.value, m.gate);
    }
    res.pass
}

#[test]
fn criterion_01_isometry_oracle_equivalence() {
    let mut sink = ArtifactSink::discard();
    let res = check_isometry(&cfg(), &mut sink).unwrap();
    assert!(
        report("1 (isometry oracle equivalence, 1e-9 relative)", &res),
        "increment variance via step representation and via the covariance double sum disagreed"
    );
}

#[test]
fn criterion_02_hardy_littlewood_identity_at_half() {
    let mut sink = ArtifactSink::discard();
    let res = check_hl(&cfg(), &mut sink).unwrap();
    assert!(report("2 (H=1/2 norm identity, 1e-12)", &res));
}

#[test]
fn criterion_03_homogeneous_family_norm_growth() {
    let mut sink = ArtifactSink::discard();
    let res = check_hls(&cfg(), &mut sink).unwrap();
    assert!(
        report("3 (two-sided linear norm growth, slope in [0.85, 1.15])", &res),
        "slope gates at M_max = 24 fail for parameter sets whose cross-term transients \
         outlast the desk window: for (k=3, a=0.9, H=0.8) the per-level increment saturates \
         like 1 - 0.974^M, so the local log-log slope at M = 24 still exceeds 1.15 for every \
         admissible family geometry (values cross-checked against the quadrature route); \
         see the decisions ledger for the quantitative analysis"
    );
}

#[test]
fn criterion_04_strict_improvement_over_classical_bound() {
    let mut sink = ArtifactSink::discard();
    let res = check_hls_improvement(&cfg(), &mut sink).unwrap();
    assert!(report("4 (strict improvement: envelope slope 0.6 vs norm slope ~1)", &res));
}

#[test]
fn criterion_05_positivity() {
    let mut sink = ArtifactSink::discard();
    let res = check_positivity(&cfg(), &mut sink).unwrap();
    assert!(report("5 (<1_I, h> >= -1e-12 over 1000 cases x 3 H)", &res));
}

#[test]
fn criterion_06_quasi_helix_flatness() {
    let mut sink = ArtifactSink::discard();
    let res = check_helix(&cfg(), &mut sink).unwrap();
    assert!(report("6 (quasi-helix ratio log-slope <= 0.05, exact covariance)", &res));
}

#[test]
fn criterion_07_restricted_pair_lower_bound() {
    let mut sink = ArtifactSink::discard();
    let res = check_tn(&cfg(), &mut sink).unwrap();
    assert!(report("7 (digit-restricted min ratio > 0, stable under 10x pairs)", &res));
}

#[test]
fn criterion_08_monte_carlo_vs_exact_covariance() {
    let mut sink = ArtifactSink::discard();
    let res = check_cov_mc(&cfg(), &mut sink).unwrap();
    assert!(report("8 (5e4-path ensemble vs exact covariance within 5 SE)", &res));
}

#[test]
fn criterion_09_roughness_dichotomy() {
    let mut sink = ArtifactSink::discard();
    let res = check_roughness(&cfg(), &mut sink).unwrap();
    assert!(report("9 (Gladyshev estimate within 0.05 of min(H,K))", &res));
}

#[test]
fn criterion_10_box_dimension() {
    let mut sink = ArtifactSink::discard();
    let res = check_dimension(&cfg(), &mut sink).unwrap();
    assert!(report("10 (box dimension within 0.1 of max(2-H, 2-K))", &res));
}

#[test]
fn criterion_11_argmax_atom_and_refinement() {
    let mut sink = ArtifactSink::discard();
    let res = check_argmax(&cfg(), &mut sink).unwrap();
    assert!(report("11 (argmax atom at 0 for H>K; refinement decay for H<K)", &res));
}

#[test]
fn criterion_12_phi_variation_trend_separation() {
    let mut sink = ArtifactSink::discard();
    let res = check_phi(&cfg(), &mut sink).unwrap();
    assert!(report("12 (matched Phi flat; Theta = Phi*log / Phi/log separate)", &res));
}

#[test]
fn criterion_13_determinism() {
    let mut sink = ArtifactSink::discard();
    let res = check_determinism(&cfg(), &mut sink).unwrap();
    assert!(report("13 (byte-identical data files across reruns)", &res));
}

/// The regime tables for the moduli of continuity, exercised alongside the
/// numbered criteria (uniform and local scale-resolved statistics).
#[test]
fn modulus_regime_tables() {
    let mut sink = ArtifactSink::discard();
    let uni = check_modulus_uniform(&cfg(), &mut sink).unwrap();
    let loc = check_modulus_local(&cfg(), &mut sink).unwrap();
    let ok = report("modulus (uniform regime table)", &uni)
        & report("modulus (local regime table)", &loc);
    assert!(ok);
}
