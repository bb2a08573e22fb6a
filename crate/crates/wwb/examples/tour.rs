//! A quick pass over the main surfaces: parameters and regimes, exact
//! covariance, path synthesis, and a roughness estimate.
//!
//! ```bash
//! cargo run --release --example tour
//! ```

use wwb::gaussian::{ww_cov, ww_increment_var, BadicPoint};
use wwb::model::{KappaSpec, ModelParams};
use wwb::path::{fold_ensemble, ww_path};
use wwb::stats::roughness_exponent;

fn main() -> wwb::Result<()> {
    // The model triple (alpha, b, H); K = min(1, -log_b alpha) is derived.
    let params = ModelParams::new(0.7, 2, 0.8, KappaSpec::Standard)?;
    println!(
        "alpha = {}, b = {}, H = {}  =>  K = {:.6}, regime {:?}",
        params.alpha,
        params.b,
        params.hurst,
        params.k,
        params.regime()
    );

    // Exact covariance on the dyadic grid: no truncation error.
    let s = BadicPoint::new(1, 2, 2)?; // t = 1/4
    let t = BadicPoint::new(3, 2, 2)?; // t = 3/4
    println!("c(1/4, 3/4) = {:.12}", ww_cov(s, t, &params)?);
    println!("E|Y(3/4) - Y(1/4)|^2 = {:.12}", ww_increment_var(s, t, &params)?);

    // One path and its pinned endpoints.
    let path = ww_path(&params, 12, 7)?;
    println!(
        "level-12 path: {} points, Y(0) = {}, Y(1) = {}",
        path.values.len(),
        path.values[0],
        path.values.last().unwrap()
    );

    // Roughness concentrates near min(H, K).
    let ests = fold_ensemble(&params, 14, 50, 11, |p| {
        roughness_exponent(p).expect("non-degenerate").gladyshev
    })?;
    let mean = ests.iter().sum::<f64>() / ests.len() as f64;
    println!(
        "mean roughness estimate over 50 paths: {:.4} (min(H,K) = {:.4})",
        mean,
        params.min_hk()
    );
    Ok(())
}
