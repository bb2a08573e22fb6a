//! Moduli-of-continuity profiles under the candidate normalizers and the
//! box-counting dimension of the graph.
//!
//! ```bash
//! cargo run --release --example moduli_and_dimension
//! ```

use wwb::model::{KappaSpec, ModelParams};
use wwb::path::{fold_ensemble, ww_path};
use wwb::stats::{box_dimension, modulus_uniform, Normalizer, NORMALIZERS};

fn main() -> wwb::Result<()> {
    // Uniform modulus: the regime-matched normalizer flattens the ratio
    // series; a power mismatch shows up as a strong trend.
    let params = ModelParams::new(0.7, 2, 0.8, KappaSpec::Standard)?; // H > K
    let path = ww_path(&params, 13, 21)?;
    println!("uniform-modulus ratio slopes (H = 0.8 > K = {:.4}):", params.k);
    for nm in NORMALIZERS {
        let rep = modulus_uniform(&path, nm, 5, 12)?;
        let mark = if nm == Normalizer::matched(&params, true) { "  <- matched" } else { "" };
        println!("  {nm:?}: slope {:+.4}{mark}", rep.slope);
    }

    // Box dimension heads for max(2-H, 2-K).
    for (alpha, h) in [(0.5, 0.4), (0.5, 0.5), (0.7, 0.7)] {
        let params = ModelParams::new(alpha, 2, h, KappaSpec::Standard)?;
        let slopes = fold_ensemble(&params, 14, 20, 31, |p| {
            box_dimension(p, 5, 10).expect("valid levels").slope
        })?;
        let mean = slopes.iter().sum::<f64>() / slopes.len() as f64;
        println!(
            "alpha = {alpha}, H = {h}: box-dimension slope {:.3} (theory {:.3})",
            mean,
            (2.0 - h).max(2.0 - params.k)
        );
    }
    Ok(())
}
