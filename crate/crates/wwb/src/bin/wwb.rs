//! Command-line interface: simulation, covariance, fractional-integral
//! sweeps, estimators, and the named check runner.
//!
//! Exit codes: 0 all enabled checks passed, 1 a check or gate failed,
//! 2 usage error. `WWB_THREADS` caps the worker pool.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use wwb::error::{Result, WwbError};
use wwb::fraccalc::{hls_sweep, FamilyStrategy};
use wwb::gaussian::{
    increment_step_repr, step_bilinear, ww_cov, ww_cov_matrix, ww_cov_truncated,
    ww_increment_var, BadicPoint,
};
use wwb::model::{GridSpec, KappaSpec, ModelParams};
use wwb::path::{
    bridge_path, fbm_path, make_ensemble, substream, synth_fgn_with, write_wwb1, ProcessKind,
    SynthMethod,
};
use wwb::report::{run_checks, ExperimentConfig};
use wwb::stats::{
    argmax_report_from_taus, box_dimension, leftmost_argmax, modulus_local, modulus_uniform,
    phi_variation, roughness_exponent, sample_restricted_pairs, Normalizer, PhiSpec,
    PhiStrategy, PhiVariant,
};

#[derive(Parser)]
#[command(name = "wwb", version, about = "Fractional Wiener-Weierstrass bridge toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Model triple shared by the path-based subcommands.
#[derive(Args, Debug, Clone)]
struct ModelArgs {
    /// Weierstrass weight alpha in (0,1)
    #[arg(long, default_value_t = 0.5)]
    alpha: f64,
    /// Integer base b >= 2
    #[arg(long, default_value_t = 2)]
    b: u32,
    /// Hurst exponent H in (0,1)
    #[arg(long = "hurst", alias = "H", default_value_t = 0.5)]
    hurst: f64,
    /// Bridge shape: standard | linear
    #[arg(long, default_value = "standard")]
    kappa: String,
    /// Set alpha = b^{-H} exactly (critical phase); overrides --alpha
    #[arg(long, default_value_t = false)]
    critical: bool,
}

impl ModelArgs {
    fn params(&self) -> Result<ModelParams> {
        let kappa = match self.kappa.as_str() {
            "standard" => KappaSpec::Standard,
            "linear" => KappaSpec::Linear,
            other => {
                return Err(WwbError::Parameter(format!("unknown kappa variant '{other}'")))
            }
        };
        if self.critical {
            ModelParams::critical(self.b, self.hurst, kappa)
        } else {
            ModelParams::new(self.alpha, self.b, self.hurst, kappa)
        }
    }
}

#[derive(Args, Debug, Clone)]
struct OutArgs {
    /// Output directory for artifacts
    #[arg(long, default_value = "wwb-out")]
    outdir: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Synthesize paths (ww, bridge, or fbm) and write CSV or WWB1 output.
    Simulate {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 10)]
        level: u32,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// ww | bridge | fbm
        #[arg(long, default_value = "ww")]
        process: String,
        #[arg(long, default_value_t = 1)]
        paths: usize,
        /// circulant | cholesky
        #[arg(long, default_value = "circulant")]
        method: String,
        /// csv | wwb1
        #[arg(long, default_value = "csv")]
        format: String,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Exact covariance c(s,t) (b-adic), truncated series, or the grid matrix.
    Cov {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 0.25)]
        s: f64,
        #[arg(long, default_value_t = 0.5)]
        t: f64,
        /// Emit the full covariance matrix at this grid level instead
        #[arg(long)]
        matrix_level: Option<u32>,
        /// Truncation order for non-b-adic arguments
        #[arg(long)]
        truncation: Option<u32>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Exact increment variance E|Y(t)-Y(s)|^2 by both routes.
    IncrementVar {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        s: f64,
        #[arg(long)]
        t: f64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Hardy-Littlewood ratio statistics over a random step-function corpus.
    HlCheck {
        #[arg(long, default_value_t = 0.3)]
        hurst: f64,
        #[arg(long, default_value_t = 1000)]
        functions: usize,
        #[arg(long, default_value_t = 20)]
        pieces: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Norm growth of the homogeneous families g_M (two-sided linear law).
    HlsSweep {
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long, default_value_t = 0.5)]
        alpha: f64,
        #[arg(long = "hurst", default_value_t = 0.5)]
        hurst: f64,
        /// contiguous | random_gap | adversarial_nested
        #[arg(long, default_value = "contiguous")]
        strategy: String,
        #[arg(long, default_value_t = 16)]
        mmax: u32,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Per-level Phi-variation sums of a simulated path.
    Variation {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 14)]
        level: u32,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// matched | subcritical | critical | supercritical | power:<p>
        #[arg(long, default_value = "matched")]
        phi: String,
        /// badic | extrema
        #[arg(long, default_value = "badic")]
        strategy: String,
        /// -1, 0, +1: multiply Phi by log(1/x)^p
        #[arg(long, default_value_t = 0)]
        log_power: i8,
        #[arg(long, default_value_t = 8)]
        jmin: u32,
        #[arg(long, default_value_t = 14)]
        jmax: u32,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Roughness exponent estimates over an ensemble.
    Roughness {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 14)]
        level: u32,
        #[arg(long, default_value_t = 100)]
        paths: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Modulus-of-continuity ratio series under a chosen normalizer.
    Modulus {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 13)]
        level: u32,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// uniform | local
        #[arg(long, default_value = "uniform")]
        mode: String,
        /// matched | pow_sqrt_log | pow_log | pow_sqrt_loglog | pow_sqrt_log_loglog | pow_k
        #[arg(long, default_value = "matched")]
        normalizer: String,
        /// grid index of the local centre (local mode)
        #[arg(long)]
        s_index: Option<usize>,
        #[arg(long, default_value_t = 5)]
        jmin: u32,
        #[arg(long, default_value_t = 12)]
        jmax: u32,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Box-counting dimension of a simulated graph.
    Dimension {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 14)]
        level: u32,
        #[arg(long, default_value_t = 50)]
        paths: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        jmin: u32,
        #[arg(long, default_value_t = 10)]
        jmax: u32,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Leftmost-argmax histogram across an ensemble.
    Argmax {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 10)]
        level: u32,
        #[arg(long, default_value_t = 2000)]
        paths: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// comma-separated histogram cell counts, e.g. 16,64,256
        #[arg(long, default_value = "16,64,256,1024")]
        refinements: String,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Sample digit-restricted b-adic pairs and their covariance ratios.
    RestrictedPairs {
        #[arg(long, default_value_t = 4)]
        n: u32,
        #[arg(long, default_value_t = 6)]
        depth: u32,
        #[arg(long, default_value_t = 1000)]
        pairs: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Also compute E|dY|^2/|t-s|^{2K} stats for the model parameters
        #[arg(long, default_value_t = false)]
        ratios: bool,
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Run named checks from a config file (or the full acceptance set).
    Report {
        /// TOML config; omit to run the full set with defaults
        #[arg(long)]
        config: Option<PathBuf>,
        /// Override the config's output directory
        #[arg(long)]
        outdir: Option<PathBuf>,
        /// Override the checks list (comma-separated)
        #[arg(long)]
        checks: Option<String>,
        /// Monte Carlo scale multiplier override
        #[arg(long)]
        mc_scale: Option<f64>,
    },
}

fn write_json<T: serde::Serialize>(dir: &Path, name: &str, value: &T) -> Result<()> {
    fs::create_dir_all(dir)?;
    let mut bytes = serde_json::to_vec_pretty(value)
        .map_err(|e| WwbError::Parameter(format!("serialize: {e}")))?;
    bytes.push(b'\n');
    fs::write(dir.join(name), bytes)?;
    Ok(())
}

fn parse_badic(x: f64, b: u32) -> Result<BadicPoint> {
    BadicPoint::from_f64(x, b, 26)
}

fn run() -> Result<bool> {
    if let Ok(threads) = std::env::var("WWB_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global()
                .map_err(|e| WwbError::Parameter(format!("WWB_THREADS: {e}")))?;
        }
    }
    let cli = Cli::parse();
    match cli.command {
        Command::Simulate { model, level, seed, process, paths, method, format, out } => {
            let params = model.params()?;
            let method: SynthMethod = method.parse()?;
            let dir = out.outdir.join("simulate");
            fs::create_dir_all(&dir)?;
            let kind = match process.as_str() {
                "ww" => ProcessKind::Ww,
                "bridge" => ProcessKind::Bridge,
                "fbm" => ProcessKind::Fbm,
                other => return Err(WwbError::Parameter(format!("unknown process '{other}'"))),
            };
            let grid = GridSpec::new(level, params.b)?;
            let build = |i: u64| -> Result<wwb::path::PathSample> {
                let s = substream(seed, i);
                match kind {
                    ProcessKind::Ww => wwb::path::ww_path_with(&params, level, s, method),
                    _ => {
                        let fgn = synth_fgn_with(grid.n_cells() as usize, params.hurst, s, method)?;
                        let w = fbm_path(&fgn.increments, grid, params, s, method);
                        Ok(if kind == ProcessKind::Fbm { w } else { bridge_path(&w) })
                    }
                }
            };
            if format == "wwb1" {
                let ens = if kind == ProcessKind::Ww {
                    make_ensemble(&params, level, paths, seed)?
                } else {
                    let built: Result<Vec<_>> = (0..paths as u64).map(build).collect();
                    wwb::path::Ensemble { paths: built?, base_seed: seed, n_paths: paths }
                };
                let mut buf = Vec::new();
                write_wwb1(&ens, &mut buf)?;
                fs::write(dir.join("paths.wwb1"), &buf)?;
                println!("wrote {}", dir.join("paths.wwb1").display());
            } else {
                for i in 0..paths as u64 {
                    let p = build(i)?;
                    let mut buf = Vec::new();
                    p.to_csv(&mut buf)?;
                    let name = format!("path_{i:05}.csv");
                    fs::write(dir.join(&name), &buf)?;
                }
                println!("wrote {paths} path file(s) under {}", dir.display());
            }
            Ok(true)
        }
        Command::Cov { model, s, t, matrix_level, truncation, out } => {
            let params = model.params()?;
            let dir = out.outdir.join("cov");
            if let Some(level) = matrix_level {
                let grid = GridSpec::new(level, params.b)?;
                let m = ww_cov_matrix(grid, &params)?;
                fs::create_dir_all(&dir)?;
                let mut buf = Vec::new();
                m.to_csv(&mut buf)?;
                fs::write(dir.join("cov_matrix.csv"), &buf)?;
                println!(
                    "level-{level} matrix: {} pts, sym defect {:.2e}, min eig {:.3e}",
                    m.n,
                    m.symmetry_defect(),
                    m.min_eigenvalue()
                );
                return Ok(true);
            }
            if let Some(trunc) = truncation {
                let tc = ww_cov_truncated(s, t, &params, trunc)?;
                println!(
                    "c({s},{t}) ~= {:.17} (truncation {trunc}, tail <= {:.3e})",
                    tc.value, tc.tail_bound
                );
                write_json(&dir, "cov.json", &tc)?;
            } else {
                let sp = parse_badic(s, params.b)?;
                let tp = parse_badic(t, params.b)?;
                let v = ww_cov(sp, tp, &params)?;
                println!("c({s},{t}) = {v:.17}");
                write_json(&dir, "cov.json", &serde_json::json!({"s": s, "t": t, "value": v}))?;
            }
            Ok(true)
        }
        Command::IncrementVar { model, s, t, out } => {
            let params = model.params()?;
            let sp = parse_badic(s, params.b)?;
            let tp = parse_badic(t, params.b)?;
            let g = increment_step_repr(sp, tp, &params)?;
            let iso = step_bilinear(&g, &g, params.hurst);
            let dsum = ww_increment_var(sp, tp, &params)?;
            let rel = (iso - dsum).abs() / dsum.abs().max(f64::MIN_POSITIVE);
            println!(
                "E|Y(t)-Y(s)|^2: isometry {iso:.17}, double-sum {dsum:.17}, rel diff {rel:.3e}"
            );
            write_json(
                &out.outdir.join("increment-var"),
                "increment_var.json",
                &serde_json::json!({"s": s, "t": t, "isometry": iso, "double_sum": dsum, "rel_diff": rel}),
            )?;
            Ok(true)
        }
        Command::HlCheck { hurst, functions, pieces, seed, out } => {
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed);
            let mut ratios = Vec::with_capacity(functions);
            for _ in 0..functions {
                let f = wwb::fraccalc::random_step_function(pieces, 3.0, &mut rng);
                if f.is_zero() {
                    continue;
                }
                let c = wwb::fraccalc::hardy_littlewood_check(&f, hurst)?;
                ratios.push(c.ratio);
            }
            let lo = ratios.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            println!(
                "H={hurst}: ratio range over {} functions: [{lo:.6}, {hi:.6}]",
                ratios.len()
            );
            let dir = out.outdir.join("hl-check");
            fs::create_dir_all(&dir)?;
            let mut csv = String::from("ratio\n");
            for r in &ratios {
                csv.push_str(&format!("{r:.16e}\n"));
            }
            fs::write(dir.join("ratios.csv"), csv)?;
            write_json(&dir, "summary.json", &serde_json::json!({
                "hurst": hurst, "n": ratios.len(), "ratio_min": lo, "ratio_max": hi,
            }))?;
            Ok(true)
        }
        Command::HlsSweep { k, alpha, hurst, strategy, mmax, seed, out } => {
            let strategy: FamilyStrategy = strategy.parse()?;
            let rep = hls_sweep(k, alpha, hurst, strategy, mmax, seed)?;
            println!(
                "slope {:.6}, const in [{:.6}, {:.6}] (r^2 {:.4})",
                rep.slope, rep.const_lo, rep.const_hi, rep.r_squared
            );
            let dir = out.outdir.join("hls-sweep");
            fs::create_dir_all(&dir)?;
            let mut buf = Vec::new();
            rep.to_csv(&mut buf)?;
            fs::write(dir.join("sweep.csv"), &buf)?;
            write_json(&dir, "report.json", &rep)?;
            Ok(true)
        }
        Command::Variation { model, level, seed, phi, strategy, log_power, jmin, jmax, out } => {
            let params = model.params()?;
            let spec = match phi.as_str() {
                "matched" => PhiSpec::regime_matched(&params),
                "subcritical" => PhiSpec {
                    variant: PhiVariant::Subcritical,
                    hurst: params.hurst,
                    k: params.k,
                    log_power: 0,
                },
                "critical" => PhiSpec {
                    variant: PhiVariant::Critical,
                    hurst: params.hurst,
                    k: params.k,
                    log_power: 0,
                },
                "supercritical" => PhiSpec {
                    variant: PhiVariant::SupercriticalPower,
                    hurst: params.hurst,
                    k: params.k,
                    log_power: 0,
                },
                other => match other.strip_prefix("power:") {
                    Some(p) => PhiSpec {
                        variant: PhiVariant::CustomPower(p.parse::<f64>().map_err(|e| {
                            WwbError::Parameter(format!("bad power '{p}': {e}"))
                        })?),
                        hurst: params.hurst,
                        k: params.k,
                        log_power: 0,
                    },
                    None => return Err(WwbError::Parameter(format!("unknown phi '{other}'"))),
                },
            }
            .with_log_power(log_power);
            let strat = match strategy.as_str() {
                "badic" => PhiStrategy::BadicSweep,
                "extrema" => PhiStrategy::ExtremaPartition,
                other => return Err(WwbError::Parameter(format!("unknown strategy '{other}'"))),
            };
            let path = wwb::path::ww_path(&params, level, seed)?;
            let rep = phi_variation(&path, &spec, strat, jmin, jmax)?;
            println!(
                "max per-level sum {:.6}; series slope {:.4}",
                rep.max_sum, rep.series.slope
            );
            let dir = out.outdir.join("variation");
            fs::create_dir_all(&dir)?;
            let mut buf = Vec::new();
            rep.series.to_csv(&mut buf)?;
            fs::write(dir.join("series.csv"), &buf)?;
            write_json(&dir, "report.json", &rep)?;
            Ok(true)
        }
        Command::Roughness { model, level, paths, seed, out } => {
            let params = model.params()?;
            let ests = wwb::path::fold_ensemble(&params, level, paths, seed, |p| {
                roughness_exponent(p).expect("non-degenerate path")
            })?;
            let mean_g = ests.iter().map(|e| e.gladyshev).sum::<f64>() / ests.len() as f64;
            let mean_r = ests.iter().map(|e| e.regression).sum::<f64>() / ests.len() as f64;
            println!(
                "min(H,K) = {:.6}; mean Gladyshev {mean_g:.6}, mean regression {mean_r:.6}",
                params.min_hk()
            );
            write_json(&out.outdir.join("roughness"), "estimates.json", &serde_json::json!({
                "target": params.min_hk(), "mean_gladyshev": mean_g, "mean_regression": mean_r,
                "n_paths": paths, "level": level,
            }))?;
            Ok(true)
        }
        Command::Modulus { model, level, seed, mode, normalizer, s_index, jmin, jmax, out } => {
            let params = model.params()?;
            let uniform = match mode.as_str() {
                "uniform" => true,
                "local" => false,
                other => return Err(WwbError::Parameter(format!("unknown mode '{other}'"))),
            };
            let nm = match normalizer.as_str() {
                "matched" => Normalizer::matched(&params, uniform),
                "pow_sqrt_log" => Normalizer::PowSqrtLog,
                "pow_log" => Normalizer::PowLog,
                "pow_sqrt_loglog" => Normalizer::PowSqrtLogLog,
                "pow_sqrt_log_loglog" => Normalizer::PowSqrtLogTimesLogLog,
                "pow_k" => Normalizer::PowK,
                other => return Err(WwbError::Parameter(format!("unknown normalizer '{other}'"))),
            };
            let path = wwb::path::ww_path(&params, level, seed)?;
            let rep = if uniform {
                modulus_uniform(&path, nm, jmin, jmax)?
            } else {
                let idx = s_index.unwrap_or((path.values.len() - 1) / 3);
                modulus_local(&path, idx, nm, jmin, jmax)?
            };
            println!("ratio series slope {:.4} under {nm:?}", rep.slope);
            let dir = out.outdir.join("modulus");
            fs::create_dir_all(&dir)?;
            let mut buf = Vec::new();
            rep.to_csv(&mut buf)?;
            fs::write(dir.join("ratios.csv"), &buf)?;
            write_json(&dir, "report.json", &rep)?;
            Ok(true)
        }
        Command::Dimension { model, level, paths, seed, jmin, jmax, out } => {
            let params = model.params()?;
            let slopes = wwb::path::fold_ensemble(&params, level, paths, seed, |p| {
                box_dimension(p, jmin, jmax).expect("valid level range").slope
            })?;
            let mean = slopes.iter().sum::<f64>() / slopes.len() as f64;
            println!(
                "mean box-dimension slope {mean:.4} (theory max(2-H, 2-K) = {:.4})",
                (2.0 - params.hurst).max(2.0 - params.k)
            );
            write_json(&out.outdir.join("dimension"), "report.json", &serde_json::json!({
                "mean_slope": mean, "target": (2.0 - params.hurst).max(2.0 - params.k),
                "n_paths": paths, "level": level, "jmin": jmin, "jmax": jmax,
            }))?;
            Ok(true)
        }
        Command::Argmax { model, level, paths, seed, refinements, out } => {
            let params = model.params()?;
            let cells: Vec<usize> = refinements
                .split(',')
                .map(|s| s.trim().parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| WwbError::Parameter(format!("bad refinements: {e}")))?;
            let taus = wwb::path::fold_ensemble(&params, level, paths, seed, |p| {
                leftmost_argmax(&p.values) as f64 / (p.values.len() - 1) as f64
            })?;
            let rep = argmax_report_from_taus(&taus, &cells)?;
            println!(
                "atom at 0: {:.4}; max cell freq at finest refinement: {:.4}",
                rep.atom_at_zero_freq, rep.max_cell_freq
            );
            write_json(&out.outdir.join("argmax"), "report.json", &rep)?;
            Ok(true)
        }
        Command::RestrictedPairs { n, depth, pairs, seed, ratios, model, out } => {
            let b = model.b;
            let rp = sample_restricted_pairs(n, b, depth, pairs, seed)?;
            println!(
                "sampled {} pairs at level {} ({} rejections)",
                rp.pairs.len(),
                rp.level,
                rp.rejections
            );
            let dir = out.outdir.join("restricted-pairs");
            fs::create_dir_all(&dir)?;
            let mut csv = String::from("s_index,t_index,level\n");
            for (s, t) in &rp.pairs {
                csv.push_str(&format!("{},{},{}\n", s.index, t.index, rp.level));
            }
            fs::write(dir.join("pairs.csv"), csv)?;
            if ratios {
                let params = model.params()?;
                let mut lo = f64::INFINITY;
                let mut hi = f64::NEG_INFINITY;
                for (s, t) in &rp.pairs {
                    let v = ww_increment_var(*s, *t, &params)?;
                    let dist = (s.value(b) - t.value(b)).abs();
                    let r = v / dist.powf(2.0 * params.k);
                    lo = lo.min(r);
                    hi = hi.max(r);
                }
                println!("E|dY|^2 / |t-s|^(2K) over pairs: [{lo:.6}, {hi:.6}]");
                write_json(&dir, "ratios.json", &serde_json::json!({
                    "min_ratio": lo, "max_ratio": hi, "n_pairs": rp.pairs.len(),
                    "k": params.k,
                }))?;
            }
            Ok(true)
        }
        Command::Report { config, outdir, checks, mc_scale } => {
            let mut cfg = match config {
                Some(path) => ExperimentConfig::from_toml(&fs::read_to_string(path)?)?,
                None => ExperimentConfig::default(),
            };
            if let Some(dir) = outdir {
                cfg.outdir = dir.to_string_lossy().into_owned();
            }
            if let Some(list) = checks {
                cfg.checks = list.split(',').map(|s| s.trim().to_string()).collect();
            }
            if let Some(scale) = mc_scale {
                cfg.mc_scale = scale;
            }
            let manifest = run_checks(&cfg)?;
            let mut all_pass = true;
            for check in &manifest.checks {
                let status = if check.pass { "PASS" } else { "FAIL" };
                println!("[{status}] {:<18} ({:.2}s)", check.name, check.runtime_secs);
                for m in &check.measurements {
                    let tag = match m.pass {
                        Some(true) => "ok  ",
                        Some(false) => "FAIL",
                        None => "info",
                    };
                    println!("    {tag} {} = {:.6e} ({})", m.label, m.value, m.gate);
                }
                all_pass &= check.pass;
            }
            println!(
                "manifest: {}/manifest.json ({} files, {:.1}s)",
                cfg.outdir,
                manifest.files.len(),
                manifest.wall_time_secs
            );
            Ok(all_pass)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
