//! Roughness and variation estimators across the three regimes: the
//! p-variation dichotomy, the Gladyshev exponent estimate, and the
//! per-level Φ-variation sums with their separating Θ trends.
//!
//! ```bash
//! cargo run --release --example roughness_and_variation
//! ```

use wwb::model::{KappaSpec, ModelParams};
use wwb::path::{fold_ensemble, ww_path};
use wwb::stats::{phi_variation, pvar_badic, roughness_exponent, PhiSpec, PhiStrategy};

fn main() -> wwb::Result<()> {
    let sets = [
        ModelParams::new(0.5, 2, 0.3, KappaSpec::Standard)?, // H < K
        ModelParams::critical(2, 0.5, KappaSpec::Standard)?, // H = K
        ModelParams::new(0.7, 2, 0.8, KappaSpec::Standard)?, // H > K
    ];
    for params in sets {
        let ests = fold_ensemble(&params, 14, 30, 5, |p| {
            roughness_exponent(p).expect("non-degenerate").gladyshev
        })?;
        let mean = ests.iter().sum::<f64>() / ests.len() as f64;
        println!(
            "H = {:.2}, K = {:.4} ({:?}): mean roughness estimate {:.4}, min(H,K) = {:.4}",
            params.hurst,
            params.k,
            params.regime(),
            mean,
            params.min_hk()
        );
    }

    // The p-variation sums move in opposite directions on either side of
    // the critical exponent 1/R.
    let params = ModelParams::new(0.5, 2, 0.3, KappaSpec::Standard)?;
    let path = ww_path(&params, 14, 9)?;
    let r = params.min_hk();
    for dp in [-0.3, 0.0, 0.3] {
        let rep = pvar_badic(&path, 1.0 / r + dp, 14)?;
        let n = rep.stats.len();
        println!(
            "p = 1/R {} {:.1}: S_12 = {:.4}, S_14 = {:.4}",
            if dp < 0.0 { "-" } else { "+" },
            dp.abs(),
            rep.stats[n - 3],
            rep.stats[n - 1]
        );
    }

    // Per-level Φ sums: flat for the matched Φ, trending once a log factor
    // is multiplied in or divided out.
    let params = ModelParams::new(0.5, 2, 0.5, KappaSpec::Standard)?;
    let path = ww_path(&params, 14, 3)?;
    let phi = PhiSpec::regime_matched(&params);
    for (log_power, label) in [(0i8, "matched"), (1, "phi*log"), (-1, "phi/log")] {
        let rep = phi_variation(
            &path,
            &phi.with_log_power(log_power),
            PhiStrategy::BadicSweep,
            8,
            14,
        )?;
        println!("{label:>8}: per-level slope {:.3}", rep.series.slope);
    }
    Ok(())
}
