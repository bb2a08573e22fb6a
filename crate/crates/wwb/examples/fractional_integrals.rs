//! Riemann–Liouville operators on step functions and the two-sided linear
//! norm growth of homogeneous indicator families.
//!
//! The squared Wiener norm ‖M_-^H(g_M)‖² of g_M = Σ_{m<M} α^m 1_{I_m} with
//! |I_m| = b^m, b = α^{−1/H}, grows linearly in M — each level contributes
//! unit order — while the classical L^{1/H} envelope only grows like M^{2H}.
//!
//! ```bash
//! cargo run --release --example fractional_integrals
//! ```

use wwb::fraccalc::{
    calibrate_norm_constant, hls_sweep, make_homogeneous_family, ml_norm_sq, rl_apply,
    FamilyStrategy, NormMode,
};
use wwb::step::StepFunction;

fn main() -> wwb::Result<()> {
    // The closed-form fractional integral of an indicator.
    let unit = StepFunction::indicator(0.0, 1.0, 1.0)?;
    for x in [0.0, 0.5, 0.9] {
        println!("I_-^0.25(1_[0,1])({x}) = {:.8}", rl_apply(&unit, 0.25, x)?);
    }

    // The operator weight is calibrated, not hard-coded: the unit indicator
    // must reproduce E[W_H(1)^2] = 1.
    for h in [0.25, 0.5, 0.75] {
        println!("C_H({h}) = {:.8}", calibrate_norm_constant(h)?);
    }

    // Both routes to the squared norm agree: exact Gaussian bilinear form
    // vs quadrature of the squared fractional integral.
    let (h, alpha) = (0.3, 0.7);
    let fam = make_homogeneous_family(2, alpha, h, 8, FamilyStrategy::RandomGap, 42)?;
    let iso = ml_norm_sq(&fam.g, h, NormMode::Isometry)?;
    let quad = ml_norm_sq(&fam.g, h, NormMode::Quadrature)?;
    println!("g_8 norm^2: isometry {iso:.8}, quadrature {quad:.8}");

    // Linear growth across family strategies.
    for strategy in [
        FamilyStrategy::Contiguous,
        FamilyStrategy::RandomGap,
        FamilyStrategy::AdversarialNested,
    ] {
        let rep = hls_sweep(2, alpha, h, strategy, 24, 42)?;
        println!(
            "{strategy:?}: log-log slope {:.4}, norm^2/M in [{:.4}, {:.4}]",
            rep.slope, rep.const_lo, rep.const_hi
        );
    }
    Ok(())
}
