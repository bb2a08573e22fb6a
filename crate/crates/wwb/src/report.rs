//! Named checks, experiment configuration, and deterministic artifact
//! emission.
//!
//! Every check writes its numeric series as CSV (17 significant digits) and
//! its summary as JSON under `<outdir>/<check>/`, then records each file
//! with a content hash in `<outdir>/manifest.json`. Given a config and a
//! code version, all data files are byte-identical across runs; wall time
//! lives only in the manifest.
//!
//! Check names: `isometry`, `hl`, `hls`, `hls-improvement`, `positivity`,
//! `cov-mc` (Monte Carlo vs exact covariance), `cov-mc2` (quasi-helix ratio
//! slopes from exact covariance), `tn` (digit-restricted lower bound),
//! `roughness`, `dimension`, `argmax`, `phi`, `modulus-uniform`,
//! `modulus-local`, `determinism`.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Result, WwbError};
use crate::fit::fit_loglog;
use crate::fraccalc::{
    hls_sweep, l1_positivity_check, make_homogeneous_family, ml_norm_sq, random_step_function,
    FamilyStrategy, NormMode,
};
use crate::gaussian::{
    increment_step_repr, step_bilinear, ww_cov_matrix, ww_increment_var, BadicPoint,
};
use crate::model::{GridSpec, KappaSpec, ModelParams};
use crate::path::{fold_ensemble, substream, ww_path};
use crate::stats::{
    box_dimension, modulus_uniform, phi_variation, roughness_exponent,
    sample_restricted_pairs, Normalizer, PhiSpec, PhiStrategy, NORMALIZERS,
};

/// All run-relevant knobs; flat key/value, serializable to TOML.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Checks to run (see module docs for the names); empty = the full
    /// acceptance set.
    #[serde(default)]
    pub checks: Vec<String>,
    /// Base seed; every check derives independent substreams from it.
    #[serde(default = "default_seed")]
    pub seed: u64,
    /// Output directory for artifacts.
    #[serde(default = "default_outdir")]
    pub outdir: String,
    /// Monte Carlo size multiplier (1.0 = the pinned acceptance sizes).
    /// Gates stay fixed; shrinking this below 1 is for smoke runs only.
    #[serde(default = "default_scale")]
    pub mc_scale: f64,
    /// Optional overrides of the default model triple used by the
    /// single-operation subcommands (not by the pinned checks).
    #[serde(default)]
    pub alpha: Option<f64>,
    #[serde(default)]
    pub b: Option<u32>,
    #[serde(default)]
    pub hurst: Option<f64>,
    #[serde(default)]
    pub kappa: Option<String>,
    #[serde(default)]
    pub level: Option<u32>,
    #[serde(default)]
    pub n_paths: Option<usize>,
    /// Tolerance overrides; keys are `<check>.<gate>` (e.g. "cov-mc2.slope").
    #[serde(default)]
    pub tolerance_overrides: BTreeMap<String, f64>,
}

fn default_seed() -> u64 {
    20_240_901
}
fn default_outdir() -> String {
    "wwb-out".into()
}
fn default_scale() -> f64 {
    1.0
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            checks: Vec::new(),
            seed: default_seed(),
            outdir: default_outdir(),
            mc_scale: default_scale(),
            alpha: None,
            b: None,
            hurst: None,
            kappa: None,
            level: None,
            n_paths: None,
            tolerance_overrides: BTreeMap::new(),
        }
    }
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| WwbError::Parameter(format!("config parse: {e}")))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    fn tol(&self, key: &str, default: f64) -> f64 {
        self.tolerance_overrides.get(key).copied().unwrap_or(default)
    }

    fn mc(&self, pinned: usize) -> usize {
        ((pinned as f64 * self.mc_scale).round() as usize).max(8)
    }
}

/// One measured quantity with its gate.
#[derive(Debug, Clone, Serialize)]
pub struct Measurement {
    pub label: String,
    pub value: f64,
    pub gate: String,
    /// None = informational (reported, not gated).
    pub pass: Option<bool>,
}

impl Measurement {
    fn gated(label: impl Into<String>, value: f64, gate: impl Into<String>, pass: bool) -> Self {
        Self { label: label.into(), value, gate: gate.into(), pass: Some(pass) }
    }
    fn info(label: impl Into<String>, value: f64, note: impl Into<String>) -> Self {
        Self { label: label.into(), value, gate: note.into(), pass: None }
    }
}

/// Result of one named check.
#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub measurements: Vec<Measurement>,
    pub runtime_secs: f64,
}

impl CheckResult {
    /// Copy with wall time scrubbed; emitted data files must be
    /// byte-identical across runs, so timing lives only in the manifest.
    fn artifact_view(&self) -> Self {
        Self { runtime_secs: 0.0, ..self.clone() }
    }

    fn from_measurements(name: &str, measurements: Vec<Measurement>, started: Instant) -> Self {
        let pass = measurements.iter().all(|m| m.pass.unwrap_or(true));
        Self {
            name: name.into(),
            pass,
            measurements,
            runtime_secs: started.elapsed().as_secs_f64(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FileEntry {
    pub path: String,
    pub sha256: String,
}

/// Run manifest: config echo, code version, per-check outcomes, file hashes.
#[derive(Debug, Clone, Serialize)]
pub struct Manifest {
    pub code_version: String,
    pub config: ExperimentConfig,
    pub wall_time_secs: f64,
    pub checks: Vec<CheckResult>,
    pub files: Vec<FileEntry>,
}

/// Writes artifacts for one check and records their hashes.
pub struct ArtifactSink {
    dir: PathBuf,
    rel_prefix: String,
    files: Vec<FileEntry>,
}

impl ArtifactSink {
    fn new(outdir: &Path, check: &str) -> Result<Self> {
        let dir = outdir.join(check);
        fs::create_dir_all(&dir)?;
        Ok(Self { dir, rel_prefix: check.to_string(), files: Vec::new() })
    }

    /// In-memory sink for callers that do not want files (tests).
    pub fn discard() -> Self {
        Self { dir: PathBuf::new(), rel_prefix: String::new(), files: Vec::new() }
    }

    pub fn write(&mut self, name: &str, bytes: &[u8]) -> Result<()> {
        if self.rel_prefix.is_empty() {
            return Ok(());
        }
        let path = self.dir.join(name);
        fs::write(&path, bytes)?;
        let mut hasher = Sha256::new();
        hasher.update(bytes);
        self.files.push(FileEntry {
            path: format!("{}/{}", self.rel_prefix, name),
            sha256: hex::encode(hasher.finalize()),
        });
        Ok(())
    }

    pub fn write_json<T: Serialize>(&mut self, name: &str, value: &T) -> Result<()> {
        let mut bytes = serde_json::to_vec_pretty(value)
            .map_err(|e| WwbError::Parameter(format!("serialize {name}: {e}")))?;
        bytes.push(b'\n');
        self.write(name, &bytes)
    }
}

fn std_params(alpha: f64, b: u32, h: f64) -> ModelParams {
    ModelParams::new(alpha, b, h, KappaSpec::Standard).expect("pinned parameters are valid")
}

// ---------------------------------------------------------------------------
// Check 1: isometry oracle equivalence
// ---------------------------------------------------------------------------

/// Increment variance two ways — signed step representation through the
/// Gaussian bilinear form vs the direct double sum — on random b-adic pairs;
/// they must agree to 1e-9 relative.
pub fn check_isometry(cfg: &ExperimentConfig, sink: &mut ArtifactSink) -> Result<CheckResult> {
    let started = Instant::now();
    let tol = cfg.tol("isometry.rel", 1e-9);
    let sets: Vec<(String, ModelParams)> = vec![
        ("alpha=0.5 b=2 H=0.3".into(), std_params(0.5, 2, 0.3)),
        ("alpha=0.5 b=2 H=0.5".into(), std_params(0.5, 2, 0.5)),
        ("alpha=0.7 b=2 H=0.8".into(), std_params(0.7, 2, 0.8)),
        (
            "critical b=2 H=0.6".into(),
            ModelParams::critical(2, 0.6, KappaSpec::Standard)?,
        ),
    ];
    let n_pairs = cfg.mc(200);
    let mut rng = ChaCha12Rng::seed_from_u64(substream(cfg.seed, 1));
    let mut measurements = Vec::new();
    let mut rows = String::from("set,level,s_index,t_index,isometry,double_sum,rel_diff\n");
    for (label, params) in &sets {
        let mut worst = 0.0f64;
        for _ in 0..n_pairs {
            let level = rng.gen_range(1..=12u32);
            let cells = crate::model::checked_pow_u64(params.b, level)?;
            let si = rng.gen_range(0..=cells);
            let mut ti = rng.gen_range(0..=cells);
            while ti == si {
                ti = rng.gen_range(0..=cells);
            }
            let s = BadicPoint::new(si, level, params.b)?;
            let t = BadicPoint::new(ti, level, params.b)?;
            let g = increment_step_repr(s, t, params)?;
            let iso = step_bilinear(&g, &g, params.hurst);
            let dsum = ww_increment_var(s, t, params)?;
            let rel = (iso - dsum).abs() / dsum.abs();
            worst = worst.max(rel);
            rows.push_str(&format!(
                "{label},{level},{si},{ti},{iso:.16e},{dsum:.16e},{rel:.16e}\n"
            ));
        }
        measurements.push(Measurement::gated(
            format!("max rel diff [{label}]"),
            worst,
            format!("<= {tol:.1e}"),
            worst <= tol,
        ));
    }
    sink.write("pairs.csv", rows.as_bytes())?;
    let res = CheckResult::from_measurements("isometry", measurements, started);
    sink.write_json("summary.json", &res.artifact_view())?;
    Ok(res)
}

// ---------------------------------------------------------------------------
// Check 2: Hardy–Littlewood identity at H = 1/2
// ---------------------------------------------------------------------------

pub fn check_hl(cfg: &ExperimentConfig, sink: &mut ArtifactSink) -> Result<CheckResult> {
    let started = Instant::now();
    let tol = cfg.tol("hl.identity", 1e-12);
    let mut rng = ChaCha12Rng::seed_from_u64(substream(cfg.seed, 2));
    let mut worst = 0.0f64;
    let mut rows = String::from("case,norm_sq,l2_sq,abs_diff\n");
    for case in 0..cfg.mc(100) {
        let f = random_step_function(20, 3.0, &mut rng);
        let v = ml_norm_sq(&f, 0.5, NormMode::Isometry)?;
        let l2 = f.norm_l2_sq();
        let diff = (v - l2).abs() / l2.max(1.0);
        worst = worst.max(diff);
        rows.push_str(&format!("{case},{v:.16e},{l2:.16e},{diff:.16e}\n"));
    }
    sink.write("corpus.csv", rows.as_bytes())?;
    let measurements = vec![Measurement::gated(
        "max |‖M f‖² − ‖f‖²_L2| / max(1, ‖f‖²)",
        worst,
        format!("<= {tol:.1e}"),
        worst <= tol,
    )];
    let res = CheckResult::from_measurements("hl", measurements, started);
    sink.write_json("summary.json", &res.artifact_view())?;
    Ok(res)
}

// ---------------------------------------------------------------------------
// Check 3: two-sided linear growth of the homogeneous-family norms
// ---------------------------------------------------------------------------

pub fn check_hls(cfg: &ExperimentConfig, sink: &mut ArtifactSink) -> Result<CheckResult> {
    let started = Instant::now();
    let slope_lo = cfg.tol("hls.slope_lo", 0.85);
    let slope_hi = cfg.tol("hls.slope_hi", 1.15);
    let growth_cap = cfg.tol("hls.const_growth", 1.10);
    let sets = [(1u32, 0.5, 0.5), (2u32, 0.7, 0.3), (3u32, 0.9, 0.8)];
    let strategies = [
        FamilyStrategy::Contiguous,
        FamilyStrategy::RandomGap,
        FamilyStrategy::AdversarialNested,
    ];
    let mut measurements = Vec::new();
    for (k, alpha, h) in sets {
        for strategy in strategies {
            let seed = substream(cfg.seed, 3);
            let rep24 = hls_sweep(k, alpha, h, strategy, 24, seed)?;
            let rep16 = hls_sweep(k, alpha, h, strategy, 16, seed)?;
            let label = format!("k={k} alpha={alpha} H={h} {strategy:?}");
            let mut buf = Vec::new();
            rep24.to_csv(&mut buf)?;
            sink.write(&format!("sweep_k{k}_a{alpha}_h{h}_{strategy:?}.csv"), &buf)?;
            measurements.push(Measurement::gated(
                format!("slope [{label}]"),
                rep24.slope,
                format!("in [{slope_lo}, {slope_hi}]"),
                rep24.slope >= slope_lo && rep24.slope <= slope_hi,
            ));
            let ratio24 = rep24.const_hi / rep24.const_lo;
            let ratio16 = rep16.const_hi / rep16.const_lo;
            let growth = ratio24 / ratio16;
            measurements.push(Measurement::gated(
                format!("const ratio growth 16→24 [{label}]"),
                growth,
                format!("< {growth_cap}"),
                growth < growth_cap,
            ));
        }
    }
    let res = CheckResult::from_measurements("hls", measurements, started);
    sink.write_json("summary.json", &res.artifact_view())?;
    Ok(res)
}

// ---------------------------------------------------------------------------
// Check 4: strict improvement over the classical envelope
// ---------------------------------------------------------------------------

pub fn check_hls_improvement(cfg: &ExperimentConfig, sink: &mut ArtifactSink) -> Result<CheckResult> {
    let started = Instant::now();
    let (alpha, h) = (0.7, 0.3);
    let seed = substream(cfg.seed, 4);
    // gated on the disjoint gapped family: its L^{1/H} envelope is exactly
    // Σ α^{m/H} b^m = M, so the envelope slope is 2H by construction, and
    // the gaps keep the negative H<1/2 cross terms from shifting the linear
    // norm law within the desk window
    let strategy = FamilyStrategy::RandomGap;
    let mut env_series = Vec::new();
    let mut rows = String::from("M,norm_sq,envelope_sq\n");
    let rep = hls_sweep(1, alpha, h, strategy, 24, seed)?;
    for m in 1..=24u32 {
        let fam = make_homogeneous_family(1, alpha, h, m, strategy, seed)?;
        let env = fam.g.norm_lp(1.0 / h).powi(2);
        env_series.push((f64::from(m), env));
        rows.push_str(&format!("{m},{:.16e},{env:.16e}\n", rep.norms_sq[(m - 1) as usize]));
    }
    sink.write("series.csv", rows.as_bytes())?;
    let env_fit = fit_loglog(&env_series)?;
    let env_tol = cfg.tol("hls-improvement.envelope_tol", 0.05);
    let norm_tol = cfg.tol("hls-improvement.norm_tol", 0.15);
    let contiguous = hls_sweep(1, alpha, h, FamilyStrategy::Contiguous, 24, seed)?;
    let measurements = vec![
        Measurement::gated(
            "envelope slope (classical lower bound, ~2H)",
            env_fit.slope,
            format!("within {env_tol} of 0.6"),
            (env_fit.slope - 0.6).abs() <= env_tol,
        ),
        Measurement::gated(
            "norm slope (improved bound, ~1)",
            rep.slope,
            format!("within {norm_tol} of 1"),
            (rep.slope - 1.0).abs() <= norm_tol,
        ),
        Measurement::gated(
            "norm slope dominates the envelope slope",
            rep.slope - env_fit.slope,
            ">= 0.2 (strict improvement)",
            rep.slope - env_fit.slope >= 0.2,
        ),
        Measurement::info(
            "contiguous-family norm slope",
            contiguous.slope,
            "adjacent packing: negative cross terms shift the linear law \
             by an additive constant, flattening the desk-scale fit",
        ),
    ];
    let res = CheckResult::from_measurements("hls-improvement", measurements, started);
    sink.write_json("summary.json", &res.artifact_view())?;
    Ok(res)
}

// ---------------------------------------------------------------------------
// Check 5: nonnegativity of ⟨1_I, h⟩ for H < 1/2
// ---------------------------------------------------------------------------

pub fn check_positivity(cfg: &ExperimentConfig, sink: &mut ArtifactSink) -> Result<CheckResult> {
    let started = Instant::now();
    let floor = cfg.tol("positivity.floor", -1e-12);
    let n_cases = cfg.mc(1000);
    let mut measurements = Vec::new();
    for h_exp in [0.1f64, 0.3, 0.45] {
        let mut rng = ChaCha12Rng::seed_from_u64(substream(cfg.seed, 5) ^ h_exp.to_bits());
        let mut worst = f64::INFINITY;
        for _ in 0..n_cases {
            // I: union of <= 5 disjoint intervals
            let n_int = rng.gen_range(1..=5usize);
            let mut cursor = 0.0f64;
            let mut intervals = Vec::with_capacity(n_int);
            for _ in 0..n_int {
                cursor += rng.gen::<f64>() * 0.5;
                let len = 0.05 + rng.gen::<f64>();
                intervals.push((cursor, cursor + len));
                cursor += len;
            }
            // h: <= 10 nonnegative pieces inside I
            let n_pieces = rng.gen_range(1..=10usize);
            let mut pieces = Vec::with_capacity(n_pieces);
            for _ in 0..n_pieces {
                let &(a, b) = &intervals[rng.gen_range(0..intervals.len())];
                let x1 = a + rng.gen::<f64>() * (b - a);
                let x2 = a + rng.gen::<f64>() * (b - a);
                if x1 != x2 {
                    pieces.push((x1.min(x2), x1.max(x2), rng.gen::<f64>() * 2.0));
                }
            }
            if pieces.is_empty() {
                continue;
            }
            let h_fn = crate::step::StepFunction::from_weighted_intervals(&pieces, 0.0)?;
            let v = l1_positivity_check(&intervals, &h_fn, h_exp)?;
            worst = worst.min(v);
        }
        measurements.push(Measurement::gated(
            format!("min ⟨1_I, h⟩ [H={h_exp}]"),
            worst,
            format!(">= {floor:.1e}"),
            worst >= floor,
        ));
    }
    let res = CheckResult::from_measurements("positivity", measurements, started);
    sink.write_json("summary.json", &res.artifact_view())?;
    Ok(res)
}

// ---------------------------------------------------------------------------
// Check 6 (cov-mc2): quasi-helix ratio flatness from exact covariance
// ---------------------------------------------------------------------------

/// (scales, mean, min, max) ratio series per level.
type RatioSeries = (Vec<f64>, Vec<f64>, Vec<f64>, Vec<f64>);

fn helix_ratio_series(
    params: &ModelParams,
    critical: bool,
    levels: std::ops::RangeInclusive<u32>,
) -> Result<RatioSeries> {
    let mut scales = Vec::new();
    let mut means = Vec::new();
    let mut mins = Vec::new();
    let mut maxs = Vec::new();
    for n in levels {
        let cells = crate::model::checked_pow_u64(params.b, n)?;
        let h_scale = f64::from(params.b).powi(-(n as i32));
        let norm = if critical {
            h_scale.powf(2.0 * params.hurst) * (1.0 / h_scale).ln()
        } else {
            h_scale.powf(2.0 * params.hurst)
        };
        let mut sum = 0.0f64;
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for k in 0..cells {
            let s = BadicPoint::new(k, n, params.b)?;
            let t = BadicPoint::new(k + 1, n, params.b)?;
            let v = ww_increment_var(s, t, params)? / norm;
            sum += v;
            lo = lo.min(v);
            hi = hi.max(v);
        }
        scales.push(h_scale);
        means.push(sum / cells as f64);
        mins.push(lo);
        maxs.push(hi);
    }
    Ok((scales, means, mins, maxs))
}

pub fn check_helix(cfg: &ExperimentConfig, sink: &mut ArtifactSink) -> Result<CheckResult> {
    let started = Instant::now();
    let slope_tol = cfg.tol("cov-mc2.slope", 0.05);
    let sets: Vec<(String, ModelParams, bool)> = vec![
        ("H<K: alpha=0.5 b=2 H=0.3".into(), std_params(0.5, 2, 0.3), false),
        (
            "H=K: critical b=2 H=0.5".into(),
            ModelParams::critical(2, 0.5, KappaSpec::Standard)?,
            true,
        ),
    ];
    let mut measurements = Vec::new();
    for (label, params, critical) in &sets {
        let (scales, means, mins, maxs) = helix_ratio_series(params, *critical, 3..=12)?;
        let mut rows = String::from("scale,mean_ratio,min_ratio,max_ratio\n");
        for i in 0..scales.len() {
            rows.push_str(&format!(
                "{:.16e},{:.16e},{:.16e},{:.16e}\n",
                scales[i], means[i], mins[i], maxs[i]
            ));
        }
        sink.write(&format!("ratios_{}.csv", if *critical { "critical" } else { "below" }), rows.as_bytes())?;
        let fit = fit_loglog(&scales.iter().copied().zip(means.iter().copied()).collect::<Vec<_>>())?;
        measurements.push(Measurement::gated(
            format!("mean-ratio log-slope [{label}]"),
            fit.slope,
            format!("|slope| <= {slope_tol}"),
            fit.slope.abs() <= slope_tol,
        ));
        // fitted two-sided constant: sup over levels of max, inf of min
        let c_hi = maxs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let c_lo = mins.iter().copied().fold(f64::INFINITY, f64::min);
        measurements.push(Measurement::info(
            format!("fitted quasi-helix constant C [{label}]"),
            (c_hi / c_lo).sqrt().max(c_hi.max(1.0 / c_lo)),
            "finite two-sided bound (reported, not asserted)",
        ));
    }
    let res = CheckResult::from_measurements("cov-mc2", measurements, started);
    sink.write_json("summary.json", &res.artifact_view())?;
    Ok(res)
}

// ---------------------------------------------------------------------------
// Check 7 (tn): restricted-pair lower bound
// ---------------------------------------------------------------------------

pub fn check_tn(cfg: &ExperimentConfig, sink: &mut ArtifactSink) -> Result<CheckResult> {
    let started = Instant::now();
    let stability_cap = cfg.tol("tn.stability", 2.0);
    // K = 0.55 via alpha = 2^{-0.55}; H = 0.6 so K in (2H-1, H)
    let alpha = 2f64.powf(-0.55);
    let params = ModelParams::new(alpha, 2, 0.6, KappaSpec::Standard)?;
    let k_exp = params.k;
    let seed = substream(cfg.seed, 7);
    let base_pairs = cfg.mc(1000);
    let mut min_ratios = Vec::new();
    for n_pairs in [base_pairs, base_pairs * 10] {
        let rp = sample_restricted_pairs(4, 2, 6, n_pairs, seed)?;
        let mut min_ratio = f64::INFINITY;
        for (s, t) in &rp.pairs {
            let v = ww_increment_var(*s, *t, &params)?;
            let dist = (s.value(2) - t.value(2)).abs();
            min_ratio = min_ratio.min(v / dist.powf(2.0 * k_exp));
        }
        min_ratios.push((n_pairs, min_ratio, rp.rejections));
    }
    let mut rows = String::from("n_pairs,min_ratio,rejections\n");
    for (n, r, rej) in &min_ratios {
        rows.push_str(&format!("{n},{r:.16e},{rej}\n"));
    }
    sink.write("min_ratios.csv", rows.as_bytes())?;
    let r1 = min_ratios[0].1;
    let r10 = min_ratios[1].1;
    let shift = (r1 / r10).max(r10 / r1);
    let measurements = vec![
        Measurement::gated("min ratio (1x pairs)", r1, "> 0", r1 > 0.0),
        Measurement::gated("min ratio (10x pairs)", r10, "> 0", r10 > 0.0),
        Measurement::gated(
            "stability factor under 10x pairs",
            shift,
            format!("<= {stability_cap}"),
            shift <= stability_cap,
        ),
    ];
    let res = CheckResult::from_measurements("tn", measurements, started);
    sink.write_json("summary.json", &res.artifact_view())?;
    Ok(res)
}

// ---------------------------------------------------------------------------
// Check 8 (cov-mc): Monte Carlo ensemble vs exact covariance matrix
// ---------------------------------------------------------------------------

pub fn check_cov_mc(cfg: &ExperimentConfig, sink: &mut ArtifactSink) -> Result<CheckResult> {
    let started = Instant::now();
    let sigma_gate = cfg.tol("cov-mc.sigmas", 5.0);
    let level = 6u32;
    let n_paths = cfg.mc(50_000);
    let mut measurements = Vec::new();
    for h in [0.3, 0.5, 0.75] {
        let params = std_params(0.7, 2, h);
        let grid = GridSpec::new(level, 2)?;
        let exact = ww_cov_matrix(grid, &params)?;
        let n_pts = exact.n;
        let seed = substream(cfg.seed, 8) ^ h.to_bits();
        // per-block second-moment sums, combined in block order so the
        // result is independent of scheduling
        let block = 1024usize;
        let n_blocks = n_paths.div_ceil(block);
        let tri = n_pts * (n_pts + 1) / 2;
        use rayon::prelude::*;
        let blocks: Vec<Vec<f64>> = (0..n_blocks)
            .into_par_iter()
            .map(|bi| {
                let lo = bi * block;
                let hi = ((bi + 1) * block).min(n_paths);
                let mut acc = vec![0.0f64; tri];
                for path_i in lo..hi {
                    let p = ww_path(&params, level, substream(seed, path_i as u64))?;
                    let mut idx = 0usize;
                    for i in 0..n_pts {
                        for j in i..n_pts {
                            acc[idx] += p.values[i] * p.values[j];
                            idx += 1;
                        }
                    }
                }
                Ok(acc)
            })
            .collect::<Result<Vec<_>>>()?;
        let mut sums = vec![0.0f64; tri];
        for row in &blocks {
            for (s, v) in sums.iter_mut().zip(row.iter()) {
                *s += v;
            }
        }
        let inv_n = 1.0 / n_paths as f64;
        let mut worst_sigma = 0.0f64;
        let mut idx = 0usize;
        for i in 0..n_pts {
            for j in i..n_pts {
                let emp = sums[idx] * inv_n;
                idx += 1;
                let ex = exact.at(i, j);
                let var = (exact.at(i, i) * exact.at(j, j) + ex * ex) * inv_n;
                if var == 0.0 {
                    // pinned rows: both sides exactly zero
                    if emp != 0.0 || ex != 0.0 {
                        worst_sigma = f64::INFINITY;
                    }
                    continue;
                }
                worst_sigma = worst_sigma.max((emp - ex).abs() / var.sqrt());
            }
        }
        measurements.push(Measurement::gated(
            format!("max |emp − exact| in SE units [H={h}]"),
            worst_sigma,
            format!("<= {sigma_gate}"),
            worst_sigma <= sigma_gate,
        ));
    }
    let res = CheckResult::from_measurements("cov-mc", measurements, started);
    sink.write_json("summary.json", &res.artifact_view())?;
    Ok(res)
}

// ---------------------------------------------------------------------------
// Check 9: roughness dichotomy
// ---------------------------------------------------------------------------

pub fn check_roughness(cfg: &ExperimentConfig, sink: &mut ArtifactSink) -> Result<CheckResult> {
    let started = Instant::now();
    let tol = cfg.tol("roughness.abs", 0.05);
    let level = 14u32;
    let n_paths = cfg.mc(100);
    let sets: Vec<(String, ModelParams, Option<f64>)> = vec![
        ("H<K: alpha=0.5 b=2 H=0.3".into(), std_params(0.5, 2, 0.3), Some(0.3)),
        ("H<K boundary: alpha=0.5 b=2 H=0.5".into(), std_params(0.5, 2, 0.5), Some(0.5)),
        ("H>K: alpha=0.7 b=2 H=0.8".into(), std_params(0.7, 2, 0.8), {
            let p = std_params(0.7, 2, 0.8);
            Some(p.k)
        }),
        // the exact critical phase carries a provable log-correction bias of
        // about log_b(n·ln b)/2n at level n, so it is reported rather than
        // gated against min(H, K)
        (
            "H=K (informational): critical b=2 H=0.5".into(),
            ModelParams::critical(2, 0.5, KappaSpec::Standard)?,
            None,
        ),
    ];
    let mut measurements = Vec::new();
    let mut rows = String::from("set,mean_gladyshev,mean_regression,target\n");
    for (i, (label, params, target)) in sets.iter().enumerate() {
        let seed = substream(cfg.seed, 9) ^ (i as u64) << 32;
        let ests = fold_ensemble(params, level, n_paths, seed, |p| {
            roughness_exponent(p).expect("level >= 10, non-degenerate")
        })?;
        let mean_g = ests.iter().map(|e| e.gladyshev).sum::<f64>() / ests.len() as f64;
        let mean_r = ests.iter().map(|e| e.regression).sum::<f64>() / ests.len() as f64;
        rows.push_str(&format!(
            "{label},{mean_g:.16e},{mean_r:.16e},{}\n",
            target.map_or("n/a".into(), |t| format!("{t:.16e}"))
        ));
        match target {
            Some(t) => measurements.push(Measurement::gated(
                format!("mean Gladyshev estimate [{label}]"),
                mean_g,
                format!("within {tol} of {t:.4}"),
                (mean_g - t).abs() <= tol,
            )),
            None => measurements.push(Measurement::info(
                format!("mean Gladyshev estimate [{label}]"),
                mean_g,
                format!(
                    "critical phase: log-corrected scaling biases the level-{level} estimate \
                     below H=K=0.5 by ~log2({level})/(2·{level})"
                ),
            )),
        }
    }
    sink.write("estimates.csv", rows.as_bytes())?;
    let res = CheckResult::from_measurements("roughness", measurements, started);
    sink.write_json("summary.json", &res.artifact_view())?;
    Ok(res)
}

// ---------------------------------------------------------------------------
// Check 10: box-counting dimension of the graph
// ---------------------------------------------------------------------------

pub fn check_dimension(cfg: &ExperimentConfig, sink: &mut ArtifactSink) -> Result<CheckResult> {
    let started = Instant::now();
    let tol = cfg.tol("dimension.abs", 0.1);
    let level = 14u32;
    let (j_min, j_max) = (5u32, 10u32);
    let n_paths = cfg.mc(50);
    // (label, params, target dim, gated?); K > 2H−1 determines gating
    let sets: Vec<(String, ModelParams, f64, bool)> = vec![
        ("H=0.4 K=1".into(), std_params(0.5, 2, 0.4), 1.6, true),
        ("H=0.5 K=1".into(), std_params(0.5, 2, 0.5), 1.5, true),
        (
            "H=0.7 K=0.5146 (informational)".into(),
            std_params(0.7, 2, 0.7),
            2.0 - std_params(0.7, 2, 0.7).k,
            false,
        ),
    ];
    let mut measurements = Vec::new();
    let mut rows = String::from("set,mean_slope,target\n");
    for (i, (label, params, target, gated)) in sets.iter().enumerate() {
        let seed = substream(cfg.seed, 10) ^ (i as u64) << 32;
        let slopes = fold_ensemble(params, level, n_paths, seed, |p| {
            box_dimension(p, j_min, j_max).expect("valid level range").slope
        })?;
        let mean = slopes.iter().sum::<f64>() / slopes.len() as f64;
        rows.push_str(&format!("{label},{mean:.16e},{target:.16e}\n"));
        if *gated {
            measurements.push(Measurement::gated(
                format!("mean box-dimension slope [{label}]"),
                mean,
                format!("within {tol} of {target:.4}"),
                (mean - target).abs() <= tol,
            ));
        } else {
            measurements.push(Measurement::info(
                format!("mean box-dimension slope [{label}]"),
                mean,
                format!("target {target:.4}; flagged informational per the acceptance table"),
            ));
        }
    }
    sink.write("slopes.csv", rows.as_bytes())?;
    let res = CheckResult::from_measurements("dimension", measurements, started);
    sink.write_json("summary.json", &res.artifact_view())?;
    Ok(res)
}

// ---------------------------------------------------------------------------
// Check 11: argmax atom and refinement decay
// ---------------------------------------------------------------------------

pub fn check_argmax(cfg: &ExperimentConfig, sink: &mut ArtifactSink) -> Result<CheckResult> {
    let started = Instant::now();
    let atom_floor = cfg.tol("argmax.atom_floor", 0.01);
    let drift_cap = cfg.tol("argmax.atom_drift", 0.2);
    let n_paths = cfg.mc(20_000);
    let mut measurements = Vec::new();

    // (a) H > K: positive atom at zero, stable under grid refinement
    let above = std_params(0.7, 2, 0.8);
    let mut freqs = Vec::new();
    for level in [8u32, 12u32] {
        let seed = substream(cfg.seed, 11) ^ u64::from(level);
        let zeros = fold_ensemble(&above, level, n_paths, seed, |p| {
            u64::from(crate::stats::leftmost_argmax(&p.values) == 0)
        })?;
        let freq = zeros.iter().sum::<u64>() as f64 / n_paths as f64;
        freqs.push((level, freq));
        measurements.push(Measurement::gated(
            format!("atom_at_zero_freq [H>K, level {level}]"),
            freq,
            format!(">= {atom_floor}"),
            freq >= atom_floor,
        ));
    }
    let drift = (freqs[1].1 - freqs[0].1).abs() / freqs[0].1;
    measurements.push(Measurement::gated(
        "atom frequency drift levels 8→12",
        drift,
        format!("< {drift_cap} relative"),
        drift < drift_cap,
    ));

    // (b) H < K: atomless — max cell frequency decays under refinement
    let below = std_params(0.5, 2, 0.3);
    let taus = fold_ensemble(&below, 12, n_paths, substream(cfg.seed, 12), |p| {
        crate::stats::leftmost_argmax(&p.values) as f64 / (p.values.len() - 1) as f64
    })?;
    let refinements: Vec<usize> = (4..=10u32).map(|l| 1usize << l).collect();
    let rep = crate::stats::argmax_report_from_taus(&taus, &refinements)?;
    let mut rows = String::from("cells,max_cell_freq\n");
    for (cells, freq) in &rep.refinement_series {
        rows.push_str(&format!("{cells},{freq:.16e}\n"));
    }
    sink.write("refinement.csv", rows.as_bytes())?;
    let inversions = rep
        .refinement_series
        .windows(2)
        .filter(|w| w[1].1 > w[0].1)
        .count();
    measurements.push(Measurement::gated(
        "refinement inversions [H<K, cells 2^4..2^10]",
        inversions as f64,
        "monotone decay with at most one inversion",
        inversions <= 1,
    ));
    measurements.push(Measurement::info(
        "atom_at_zero_freq [H<K]",
        rep.atom_at_zero_freq,
        "expected ~0 in the atomless regime",
    ));
    let res = CheckResult::from_measurements("argmax", measurements, started);
    sink.write_json("summary.json", &res.artifact_view())?;
    Ok(res)
}

// ---------------------------------------------------------------------------
// Check 12: Φ-variation trend separation
// ---------------------------------------------------------------------------

pub fn check_phi(cfg: &ExperimentConfig, sink: &mut ArtifactSink) -> Result<CheckResult> {
    let started = Instant::now();
    let flat_tol = cfg.tol("phi.flat", 0.1);
    let sep_tol = cfg.tol("phi.separation", 0.2);
    // H < K so the subcritical Φ applies and desk-scale increments stay
    // below the clamp on levels 8..14
    let params = std_params(0.5, 2, 0.5);
    let n_paths = cfg.mc(20);
    let level = 14u32;
    let (j_lo, j_hi) = (8u32, 14u32);
    let phi = PhiSpec::regime_matched(&params);
    let variants: [(i8, &str); 3] = [(0, "matched"), (1, "theta=phi*log"), (-1, "theta=phi/log")];
    // pooled per-path per-level points, slope fit on the pooled series
    let seed = substream(cfg.seed, 13);
    let per_path = fold_ensemble(&params, level, n_paths, seed, |p| {
        let mut out = Vec::new();
        for (lp, _) in variants {
            let rep = phi_variation(p, &phi.with_log_power(lp), PhiStrategy::BadicSweep, j_lo, j_hi)
                .expect("valid levels");
            out.push(
                rep.series
                    .scales
                    .iter()
                    .copied()
                    .zip(rep.series.stats.iter().copied())
                    .collect::<Vec<_>>(),
            );
        }
        out
    })?;
    let mut measurements = Vec::new();
    let mut csv = String::from("variant,mean_increment,s_phi\n");
    for (vi, (_, name)) in variants.iter().enumerate() {
        let pooled: Vec<(f64, f64)> = per_path.iter().flat_map(|p| p[vi].iter().copied()).collect();
        for (x, y) in &pooled {
            csv.push_str(&format!("{name},{x:.16e},{y:.16e}\n"));
        }
        let fit = fit_loglog(&pooled)?;
        let m = match *name {
            "matched" => Measurement::gated(
                "matched Φ log-slope",
                fit.slope,
                format!("|slope| <= {flat_tol}"),
                fit.slope.abs() <= flat_tol,
            ),
            "theta=phi*log" => Measurement::gated(
                "Θ = Φ·log log-slope",
                fit.slope,
                format!("<= -{sep_tol}"),
                fit.slope <= -sep_tol,
            ),
            _ => Measurement::gated(
                "Θ = Φ/log log-slope",
                fit.slope,
                format!(">= +{sep_tol}"),
                fit.slope >= sep_tol,
            ),
        };
        measurements.push(m);
    }
    sink.write("series.csv", csv.as_bytes())?;
    let res = CheckResult::from_measurements("phi", measurements, started);
    sink.write_json("summary.json", &res.artifact_view())?;
    Ok(res)
}

// ---------------------------------------------------------------------------
// Checks: modulus regime tables (uniform and local)
// ---------------------------------------------------------------------------

fn modulus_check_impl(cfg: &ExperimentConfig, sink: &mut ArtifactSink, uniform: bool) -> Result<CheckResult> {
    let started = Instant::now();
    let name = if uniform { "modulus-uniform" } else { "modulus-local" };
    let flat_tol = cfg.tol(&format!("{name}.flat"), 0.12);
    let sep_tol = cfg.tol(&format!("{name}.power_separation"), 0.05);
    let n_paths = cfg.mc(100);
    // the local annuli need enough grid pairs per scale, so the local mode
    // stops four levels short of the resolution
    let level = if uniform { 13u32 } else { 14u32 };
    let (j_lo, j_hi) = if uniform { (5u32, 12u32) } else { (4u32, 10u32) };
    let sets: Vec<(String, ModelParams)> = vec![
        ("H<K: alpha=0.5 b=2 H=0.3".into(), std_params(0.5, 2, 0.3)),
        (
            "H=K: critical b=2 H=0.5".into(),
            ModelParams::critical(2, 0.5, KappaSpec::Standard)?,
        ),
        ("H>K: alpha=0.7 b=2 H=0.8".into(), std_params(0.7, 2, 0.8)),
    ];
    let mut measurements = Vec::new();
    let mut csv = String::from("set,normalizer,scale,mean_ratio\n");
    for (si, (label, params)) in sets.iter().enumerate() {
        let matched = Normalizer::matched(params, uniform);
        let seed = substream(cfg.seed, if uniform { 14 } else { 15 }) ^ (si as u64) << 40;
        // mean ratio per level per candidate across the ensemble
        let per_path = fold_ensemble(params, level, n_paths, seed, |p| {
            let n_cells = p.values.len() - 1;
            NORMALIZERS
                .iter()
                .map(|nm| {
                    if uniform {
                        let rep = modulus_uniform(p, *nm, j_lo, j_hi).expect("valid levels");
                        (rep.scales, rep.stats)
                    } else {
                        // average the annulus maxima over three interior
                        // centres to tame point-specific wobble
                        let centres = [n_cells / 4, n_cells / 2, 3 * n_cells / 4];
                        let mut scales = Vec::new();
                        let mut stats: Vec<f64> = Vec::new();
                        for (ci, &c) in centres.iter().enumerate() {
                            let rep =
                                crate::stats::modulus_local_annulus(p, c, *nm, j_lo, j_hi)
                                    .expect("valid levels");
                            if ci == 0 {
                                scales = rep.scales;
                                stats = rep.stats;
                            } else {
                                for (s, v) in stats.iter_mut().zip(rep.stats.iter()) {
                                    *s += v;
                                }
                            }
                        }
                        for s in &mut stats {
                            *s /= centres.len() as f64;
                        }
                        (scales, stats)
                    }
                })
                .collect::<Vec<_>>()
        })?;
        let mut slopes = Vec::new();
        for (ni, nm) in NORMALIZERS.iter().enumerate() {
            let scales = &per_path[0][ni].0;
            let mut means = vec![0.0f64; scales.len()];
            for p in &per_path {
                for (m, v) in means.iter_mut().zip(p[ni].1.iter()) {
                    *m += v;
                }
            }
            for m in &mut means {
                *m /= per_path.len() as f64;
            }
            for (s, m) in scales.iter().zip(&means) {
                csv.push_str(&format!("{label},{nm:?},{s:.16e},{m:.16e}\n"));
            }
            let fit = fit_loglog(&scales.iter().copied().zip(means.iter().copied()).collect::<Vec<_>>())?;
            slopes.push((*nm, fit.slope));
        }
        let matched_slope = slopes
            .iter()
            .find(|(nm, _)| *nm == matched)
            .expect("matched normalizer in menu")
            .1;
        measurements.push(Measurement::gated(
            format!("matched normalizer |slope| [{label}]"),
            matched_slope.abs(),
            format!("<= {flat_tol}"),
            matched_slope.abs() <= flat_tol,
        ));
        // the regime's power exponent must be identifiable: the most
        // divergent wrong-power candidate has to be visibly less flat than
        // the matched one. Individual wrong-power candidates whose log
        // correction happens to offset the power gap over the desk window
        // are reported but not gated, as are same-power log refinements.
        let mut worst_wrong: Option<(Normalizer, f64)> = None;
        for (nm, slope) in &slopes {
            if *nm == matched {
                continue;
            }
            if nm.same_power(&matched, params.hurst, params.k) {
                measurements.push(Measurement::info(
                    format!("same-power candidate {nm:?} slope [{label}]"),
                    *slope,
                    "log-refinement candidate; asymptotic distinction, reported only",
                ));
            } else {
                measurements.push(Measurement::info(
                    format!("wrong-power candidate {nm:?} slope [{label}]"),
                    *slope,
                    "power-mismatched candidate",
                ));
                if worst_wrong.is_none_or(|(_, w)| slope.abs() > w) {
                    worst_wrong = Some((*nm, slope.abs()));
                }
            }
        }
        if let Some((nm, worst)) = worst_wrong {
            measurements.push(Measurement::gated(
                format!("max wrong-power |slope| ({nm:?}) [{label}]"),
                worst,
                format!(">= matched + {sep_tol}"),
                worst >= matched_slope.abs() + sep_tol,
            ));
        }
    }
    sink.write("ratio_series.csv", csv.as_bytes())?;
    let res = CheckResult::from_measurements(name, measurements, started);
    sink.write_json("summary.json", &res.artifact_view())?;
    Ok(res)
}

pub fn check_modulus_uniform(cfg: &ExperimentConfig, sink: &mut ArtifactSink) -> Result<CheckResult> {
    modulus_check_impl(cfg, sink, true)
}

pub fn check_modulus_local(cfg: &ExperimentConfig, sink: &mut ArtifactSink) -> Result<CheckResult> {
    modulus_check_impl(cfg, sink, false)
}

// ---------------------------------------------------------------------------
// Check 13: end-to-end determinism
// ---------------------------------------------------------------------------

/// Runs a reduced copy of every data-producing check twice (same config)
/// into scratch directories and compares the data files byte for byte.
pub fn check_determinism(cfg: &ExperimentConfig, sink: &mut ArtifactSink) -> Result<CheckResult> {
    let started = Instant::now();
    let mut reduced = cfg.clone();
    reduced.mc_scale = (cfg.mc_scale * 0.05).min(0.05);
    reduced.checks = RUNNABLE_CHECKS
        .iter()
        .filter(|c| **c != "determinism")
        .map(|c| (*c).to_string())
        .collect();
    let base = std::env::temp_dir().join(format!("wwb-determinism-{}", std::process::id()));
    let mut digests = Vec::new();
    for run in 0..2 {
        let dir = base.join(format!("run{run}"));
        if dir.exists() {
            fs::remove_dir_all(&dir)?;
        }
        reduced.outdir = dir.to_string_lossy().into_owned();
        let manifest = run_checks(&reduced)?;
        let mut files: Vec<(String, String)> = manifest
            .files
            .iter()
            .map(|f| (f.path.clone(), f.sha256.clone()))
            .collect();
        files.sort();
        digests.push(files);
    }
    let identical = digests[0] == digests[1];
    let n_files = digests[0].len();
    if base.exists() {
        fs::remove_dir_all(&base)?;
    }
    let measurements = vec![Measurement::gated(
        "data files identical across two runs",
        if identical { 1.0 } else { 0.0 },
        format!("all {n_files} files byte-identical"),
        identical,
    )];
    let res = CheckResult::from_measurements("determinism", measurements, started);
    sink.write_json("summary.json", &res.artifact_view())?;
    Ok(res)
}

/// Every named check that produces data (everything except determinism
/// recursion guards).
pub const RUNNABLE_CHECKS: [&str; 14] = [
    "isometry",
    "hl",
    "hls",
    "hls-improvement",
    "positivity",
    "cov-mc2",
    "tn",
    "cov-mc",
    "roughness",
    "dimension",
    "argmax",
    "phi",
    "modulus-uniform",
    "modulus-local",
];

/// The acceptance set: every runnable check plus the determinism check.
pub fn acceptance_checks() -> Vec<String> {
    let mut v: Vec<String> = RUNNABLE_CHECKS.iter().map(|s| s.to_string()).collect();
    v.push("determinism".into());
    v
}

pub fn run_single_check(
    name: &str,
    cfg: &ExperimentConfig,
    sink: &mut ArtifactSink,
) -> Result<CheckResult> {
    match name {
        "isometry" => check_isometry(cfg, sink),
        "hl" => check_hl(cfg, sink),
        "hls" => check_hls(cfg, sink),
        "hls-improvement" => check_hls_improvement(cfg, sink),
        "positivity" => check_positivity(cfg, sink),
        "cov-mc2" | "helix" => check_helix(cfg, sink),
        "tn" => check_tn(cfg, sink),
        "cov-mc" => check_cov_mc(cfg, sink),
        "roughness" => check_roughness(cfg, sink),
        "dimension" => check_dimension(cfg, sink),
        "argmax" => check_argmax(cfg, sink),
        "phi" => check_phi(cfg, sink),
        "modulus-uniform" => check_modulus_uniform(cfg, sink),
        "modulus-local" => check_modulus_local(cfg, sink),
        "determinism" => check_determinism(cfg, sink),
        other => Err(WwbError::Parameter(format!("unknown check '{other}'"))),
    }
}

/// Run the configured checks, write artifacts and the manifest, and return
/// the manifest.
pub fn run_checks(cfg: &ExperimentConfig) -> Result<Manifest> {
    let started = Instant::now();
    let outdir = PathBuf::from(&cfg.outdir);
    fs::create_dir_all(&outdir)?;
    let names: Vec<String> = if cfg.checks.is_empty() {
        acceptance_checks()
    } else {
        cfg.checks.clone()
    };
    let mut checks = Vec::new();
    let mut files = Vec::new();
    for name in &names {
        let mut sink = ArtifactSink::new(&outdir, name)?;
        let result = run_single_check(name, cfg, &mut sink)?;
        files.append(&mut sink.files);
        checks.push(result);
    }
    let manifest = Manifest {
        code_version: env!("CARGO_PKG_VERSION").to_string(),
        config: cfg.clone(),
        wall_time_secs: started.elapsed().as_secs_f64(),
        checks,
        files,
    };
    let mut bytes = serde_json::to_vec_pretty(&manifest)
        .map_err(|e| WwbError::Parameter(format!("manifest serialize: {e}")))?;
    bytes.push(b'\n');
    fs::write(outdir.join("manifest.json"), bytes)?;
    Ok(manifest)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_roundtrip_is_flat() {
        let mut cfg = ExperimentConfig {
            checks: vec!["hl".into(), "isometry".into()],
            ..Default::default()
        };
        cfg.tolerance_overrides.insert("hl.identity".into(), 1e-11);
        let text = cfg.to_toml();
        let back = ExperimentConfig::from_toml(&text).unwrap();
        assert_eq!(back.checks, cfg.checks);
        assert_eq!(back.tolerance_overrides["hl.identity"], 1e-11);
        assert!(ExperimentConfig::from_toml("unknown_key = 3").is_err());
    }

    #[test]
    fn hl_check_passes_quickly() {
        let cfg = ExperimentConfig { mc_scale: 0.2, ..Default::default() };
        let mut sink = ArtifactSink::discard();
        let res = check_hl(&cfg, &mut sink).unwrap();
        assert!(res.pass, "{:?}", res.measurements);
    }

    #[test]
    fn unknown_check_is_rejected() {
        let cfg = ExperimentConfig::default();
        let mut sink = ArtifactSink::discard();
        assert!(run_single_check("nope", &cfg, &mut sink).is_err());
    }
}
