//! The distribution of the leftmost maximizer: an atom at t = 0 appears
//! exactly in the H > K regime, while for H ≤ K the histogram spreads out
//! and its peak decays under refinement.
//!
//! ```bash
//! cargo run --release --example argmax_atom
//! ```

use wwb::model::{KappaSpec, ModelParams};
use wwb::path::fold_ensemble;
use wwb::stats::{argmax_report_from_taus, leftmost_argmax};

fn main() -> wwb::Result<()> {
    let n_paths = 4000usize;
    for (alpha, h, label) in [(0.7, 0.8, "H > K"), (0.5, 0.3, "H < K")] {
        let params = ModelParams::new(alpha, 2, h, KappaSpec::Standard)?;
        let taus = fold_ensemble(&params, 10, n_paths, 77, |p| {
            leftmost_argmax(&p.values) as f64 / (p.values.len() - 1) as f64
        })?;
        let rep = argmax_report_from_taus(&taus, &[16, 64, 256])?;
        println!(
            "{label} (alpha = {alpha}, H = {h}, K = {:.4}): atom at 0 = {:.4}",
            params.k, rep.atom_at_zero_freq
        );
        for (cells, freq) in &rep.refinement_series {
            println!("  {cells:>4} cells: max cell frequency {freq:.4}");
        }
    }
    Ok(())
}
