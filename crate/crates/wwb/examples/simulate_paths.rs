//! Path synthesis: fGn by circulant embedding, the bridge transform, the
//! exact finite Weierstrass superposition, and reproducible ensembles.
//!
//! ```bash
//! cargo run --release --example simulate_paths
//! ```

use wwb::model::{GridSpec, KappaSpec, ModelParams};
use wwb::path::{
    bridge_path, fbm_path, make_ensemble, superpose, synth_fgn, write_wwb1, SynthMethod,
};

fn main() -> wwb::Result<()> {
    let params = ModelParams::new(0.6, 2, 0.4, KappaSpec::Standard)?;
    let level = 10u32;
    let grid = GridSpec::new(level, params.b)?;

    // Stage by stage: noise -> fBm -> bridge -> superposition.
    let fgn = synth_fgn(grid.n_cells() as usize, params.hurst, 7)?;
    println!(
        "fGn: {} increments by {:?}, clipped eigenvalue mass {:.1e}",
        fgn.increments.len(),
        fgn.method,
        fgn.clipped_mass
    );
    let w = fbm_path(&fgn.increments, grid, params, 7, SynthMethod::Circulant);
    let b = bridge_path(&w);
    let y = superpose(&b);
    println!(
        "cascade: W(1) = {:.6}, B(1) = {}, Y(1) = {} (bridge and superposition pin exactly)",
        w.values.last().unwrap(),
        b.values.last().unwrap(),
        y.values.last().unwrap()
    );

    // Ensembles use one counter-based stream per path index: identical
    // content for any parallelism, reproducible from (base_seed, i).
    let ens = make_ensemble(&params, level, 256, 12345)?;
    let single = wwb::path::ww_path(&params, level, wwb::path::substream(12345, 17))?;
    assert_eq!(ens.paths[17].values, single.values);
    println!("ensemble of {} paths; path 17 reproduced from its substream", ens.n_paths);

    // Compact binary export.
    let mut buf = Vec::new();
    write_wwb1(&ens, &mut buf)?;
    println!("WWB1 block: {} bytes", buf.len());
    Ok(())
}
