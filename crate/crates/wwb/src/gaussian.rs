//! Exact second-order structure of the process family.
//!
//! Everything here is closed-form Gaussian algebra: the fBm kernel
//! `R(s,t) = ½(s^{2H} + t^{2H} − |t−s|^{2H})`, the bilinear form
//! `⟨f,g⟩ = E[∫f dW_H · ∫g dW_H]` on step functions, bridge and
//! Wiener–Weierstrass covariances on b-adic grids, and the signed step
//! representation of an increment `Y(t) − Y(s)` as a Wiener integral.
//!
//! On a level-n b-adic grid the Weierstrass superposition terminates after n
//! terms ({b^m t} = 0 for m ≥ n), so all covariances are finite double sums
//! with no truncation error. The numerical care in this module goes into
//! evaluating second differences of x ↦ x^{2H} without catastrophic
//! cancellation; see [`increment_bilinear`].

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Result, WwbError};
use crate::model::{GridSpec, ModelParams};
use crate::step::StepFunction;

/// |x|^{2H} with exact fast paths for the integer exponents.
#[inline]
pub(crate) fn pow_abs(x: f64, two_h: f64) -> f64 {
    let a = x.abs();
    if two_h == 1.0 {
        a
    } else if two_h == 2.0 {
        a * a
    } else {
        a.powf(two_h)
    }
}

/// x^{2H} − y^{2H} for x, y ≥ 0, accurate when x ≈ y.
///
/// Uses y^{2H}·expm1(2H·log1p((x−y)/y)) so the result carries the relative
/// accuracy of x − y rather than the absolute accuracy of the two powers.
#[inline]
pub(crate) fn diff_pow(x: f64, y: f64, two_h: f64) -> f64 {
    debug_assert!(x >= 0.0 && y >= 0.0);
    if x == y {
        return 0.0;
    }
    if x < y {
        return -diff_pow(y, x, two_h);
    }
    if y == 0.0 {
        return pow_abs(x, two_h);
    }
    if two_h == 1.0 {
        return x - y;
    }
    pow_abs(y, two_h) * ((two_h * ((x - y) / y).ln_1p()).exp_m1())
}

/// Covariance kernel of fractional Brownian motion.
pub fn fbm_cov(s: f64, t: f64, hurst: f64) -> Result<f64> {
    if s < 0.0 || t < 0.0 {
        return Err(WwbError::Domain(format!("fbm_cov needs s,t >= 0, got ({s},{t})")));
    }
    let two_h = 2.0 * hurst;
    Ok(0.5 * (pow_abs(s, two_h) + pow_abs(t, two_h) - pow_abs(t - s, two_h)))
}

/// E[(W_H(b1) − W_H(a1))(W_H(b2) − W_H(a2))].
///
/// The closed form ½(|b1−a2|^{2H} + |a1−b2|^{2H} − |b1−b2|^{2H} − |a1−a2|^{2H})
/// cancels catastrophically when both intervals are short relative to their
/// separation d. In that regime (lengths ≤ d/8) the value is computed instead
/// from the binomial expansion of the second difference of x ↦ x^{2H}, which
/// sums same-scale terms only:
///   ½ d^{2H} Σ_{k≥2} C(2H,k) [(u1+u2)^k − u1^k − u2^k],  u_i = h_i/d.
pub fn increment_bilinear(a1: f64, b1: f64, a2: f64, b2: f64, hurst: f64) -> f64 {
    let two_h = 2.0 * hurst;
    // normalize each interval; a reversed interval flips the overall sign
    let (mut l1, mut r1, mut sign) = if a1 <= b1 { (a1, b1, 1.0) } else { (b1, a1, -1.0) };
    let (mut l2, mut r2) = if a2 <= b2 { (a2, b2) } else { (b2, a2) };
    if a2 > b2 {
        sign = -sign;
    }
    if l1 == r1 || l2 == r2 {
        return 0.0;
    }
    // order the intervals left to right
    if l2 < l1 {
        std::mem::swap(&mut l1, &mut l2);
        std::mem::swap(&mut r1, &mut r2);
    }
    let gap = l2 - r1;
    let h1 = r1 - l1;
    let h2 = r2 - l2;
    if gap > 0.0 && h1 <= gap / 8.0 && h2 <= gap / 8.0 {
        return sign * separated_bilinear(gap, h1, h2, two_h);
    }
    // direct four-power form with compensated summation
    let terms = [
        pow_abs(r1 - l2, two_h),
        pow_abs(l1 - r2, two_h),
        -pow_abs(r1 - r2, two_h),
        -pow_abs(l1 - l2, two_h),
    ];
    sign * 0.5 * neumaier_sum(&terms)
}

/// Second difference via the binomial series; valid for h1, h2 ≤ gap/8.
fn separated_bilinear(gap: f64, h1: f64, h2: f64, two_h: f64) -> f64 {
    let u1 = h1 / gap;
    let u2 = h2 / gap;
    let u = u1 + u2;
    // running powers of u1 and u2 up to the current order
    let mut pow1 = vec![1.0, u1];
    let mut pow2 = vec![1.0, u2];
    let mut coeff = two_h; // C(2H, 1)
    let mut acc = 0.0f64;
    let mut u_pow = u; // u^k
    for k in 2..=64usize {
        coeff *= (two_h - (k as f64 - 1.0)) / k as f64;
        u_pow *= u;
        pow1.push(pow1[k - 1] * u1);
        pow2.push(pow2[k - 1] * u2);
        // g_k = (u1+u2)^k − u1^k − u2^k = Σ_{j=1..k-1} C(k,j) u1^j u2^{k-j}
        let mut g = 0.0f64;
        let mut binom = 1.0f64;
        for j in 1..k {
            binom *= (k - j + 1) as f64 / j as f64;
            g += binom * pow1[j] * pow2[k - j];
        }
        acc += coeff * g;
        if coeff.abs() * u_pow <= 1e-17 * acc.abs() {
            break;
        }
    }
    0.5 * pow_abs(gap, two_h) * acc
}

fn neumaier_sum(terms: &[f64]) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for &t in terms {
        let s = sum + t;
        if sum.abs() >= t.abs() {
            comp += (sum - s) + t;
        } else {
            comp += (t - s) + sum;
        }
        sum = s;
    }
    sum + comp
}

/// E[(W_H(t) − W_H(s)) · W_H(1)], stably.
///
/// Equals ½[(t^{2H} − s^{2H}) + ((1−s)^{2H} − (1−t)^{2H})], which is exactly
/// the increment of the standard bridge-shape function.
#[inline]
fn increment_times_w1(s: f64, t: f64, two_h: f64) -> f64 {
    0.5 * (diff_pow(t, s, two_h) + diff_pow(1.0 - s, 1.0 - t, two_h))
}

/// ⟨f, g⟩ = E[∫f dW_H · ∫g dW_H] for canonical step functions.
///
/// Expands into piece pairs; cost O(pq). The constant parts enter as
/// indicator pieces on `[0, 1]`.
pub fn step_bilinear(f: &StepFunction, g: &StepFunction, hurst: f64) -> f64 {
    let mut fp: Vec<(f64, f64, f64)> = f
        .step_pieces()
        .into_iter()
        .map(|p| (p.start, p.end, p.value))
        .collect();
    if f.constant_part() != 0.0 {
        fp.push((0.0, 1.0, f.constant_part()));
    }
    let mut gp: Vec<(f64, f64, f64)> = g
        .step_pieces()
        .into_iter()
        .map(|p| (p.start, p.end, p.value))
        .collect();
    if g.constant_part() != 0.0 {
        gp.push((0.0, 1.0, g.constant_part()));
    }
    let mut terms = Vec::with_capacity(fp.len() * gp.len());
    for &(a1, b1, w1) in &fp {
        for &(a2, b2, w2) in &gp {
            terms.push(w1 * w2 * increment_bilinear(a1, b1, a2, b2, hurst));
        }
    }
    neumaier_sum(&terms)
}

/// Covariance of the fractional Brownian bridge B_H(t) = W_H(t) − κ(t) W_H(1).
///
/// Zero whenever s or t is a pinned endpoint.
pub fn bridge_cov(s: f64, t: f64, params: &ModelParams) -> Result<f64> {
    if !(0.0..=1.0).contains(&s) || !(0.0..=1.0).contains(&t) {
        return Err(WwbError::Domain(format!("bridge_cov needs s,t in [0,1], got ({s},{t})")));
    }
    Ok(bridge_cov_unchecked(s, t, params))
}

#[inline]
pub(crate) fn bridge_cov_unchecked(s: f64, t: f64, params: &ModelParams) -> f64 {
    if s == 0.0 || t == 0.0 || s == 1.0 || t == 1.0 {
        return 0.0;
    }
    let h = params.hurst;
    let two_h = 2.0 * h;
    let ks = params.kappa_at(s);
    let kt = params.kappa_at(t);
    let r_st = 0.5 * (pow_abs(s, two_h) + pow_abs(t, two_h) - pow_abs(t - s, two_h));
    let r_s1 = 0.5 * (pow_abs(s, two_h) + 1.0 - pow_abs(1.0 - s, two_h));
    let r_t1 = 0.5 * (pow_abs(t, two_h) + 1.0 - pow_abs(1.0 - t, two_h));
    r_st - ks * r_t1 - kt * r_s1 + ks * kt
}

/// Covariance of bridge increments,
/// E[(B(t1) − B(s1)) (B(t2) − B(s2))], grouped to avoid cancellation:
/// the W-increment term uses [`increment_bilinear`] and the κ cross terms
/// use stable power differences.
#[inline]
fn bridge_increment_cov(s1: f64, t1: f64, s2: f64, t2: f64, params: &ModelParams) -> f64 {
    let h = params.hurst;
    let two_h = 2.0 * h;
    let dk1 = params.kappa.increment(s1, t1, h);
    let dk2 = params.kappa.increment(s2, t2, h);
    let w_cross = increment_bilinear(s1, t1, s2, t2, h);
    let w1_1 = increment_times_w1(s1, t1, two_h);
    let w1_2 = increment_times_w1(s2, t2, two_h);
    w_cross - dk1 * w1_2 - dk2 * w1_1 + dk1 * dk2
}

/// A b-adic point s = k·b^{−n}, kept as exact integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BadicPoint {
    pub index: u64,
    pub level: u32,
}

impl BadicPoint {
    pub fn new(index: u64, level: u32, b: u32) -> Result<Self> {
        let cells = crate::model::checked_pow_u64(b, level)?;
        if index > cells {
            return Err(WwbError::Grid(format!(
                "index {index} exceeds b^n = {cells} at level {level}"
            )));
        }
        Ok(Self { index, level })
    }

    pub fn value(&self, b: u32) -> f64 {
        self.index as f64 / crate::model::checked_pow_u64(b, self.level).expect("validated") as f64
    }

    /// Exact check that an f64 is b-adic of level ≤ max_level.
    pub fn from_f64(x: f64, b: u32, max_level: u32) -> Result<Self> {
        if !(0.0..=1.0).contains(&x) {
            return Err(WwbError::Mode(format!("{x} outside [0,1]")));
        }
        let mut level = 0u32;
        let mut scaled = x;
        loop {
            if scaled == scaled.floor() {
                return Self::new(scaled as u64, level, b).map(|p| Self {
                    index: p.index,
                    level,
                });
            }
            if level >= max_level {
                return Err(WwbError::Mode(format!(
                    "{x} is not b-adic of level <= {max_level} (base {b})"
                )));
            }
            scaled *= f64::from(b);
            level += 1;
        }
    }
}

/// Exact covariance c(s,t) = E[Y(s)Y(t)] for b-adic s, t of level ≤ n.
///
/// The double sum Σ_{m,m'<n} α^{m+m'}·Cov(B({b^m s}), B({b^{m'} t})) is
/// exactly finite on the grid.
pub fn ww_cov(s: BadicPoint, t: BadicPoint, params: &ModelParams) -> Result<f64> {
    let n = s.level.max(t.level).max(1);
    let grid = GridSpec::new(n, params.b)?;
    let cells = grid.n_cells();
    let scale_s = cells / crate::model::checked_pow_u64(params.b, s.level)?;
    let scale_t = cells / crate::model::checked_pow_u64(params.b, t.level)?;
    let si = s.index * scale_s;
    let ti = t.index * scale_t;
    let denom = cells as f64;
    let mut acc = 0.0f64;
    let mut alpha_m = 1.0f64;
    for m in 0..n {
        let sm = grid.frac_index(si, m)? as f64 / denom;
        let mut alpha_mp = 1.0f64;
        let mut inner = 0.0f64;
        for mp in 0..n {
            let tmp = grid.frac_index(ti, mp)? as f64 / denom;
            inner += alpha_mp * bridge_cov_unchecked(sm, tmp, params);
            alpha_mp *= params.alpha;
        }
        acc += alpha_m * inner;
        alpha_m *= params.alpha;
    }
    Ok(acc)
}

/// Exact increment variance E[(Y(t) − Y(s))²] for b-adic s, t.
///
/// Grouped as the double sum over bridge-increment covariances so that each
/// term carries its own scale; this keeps the result accurate even when it
/// is many orders below the individual variances c(s,s), c(t,t).
pub fn ww_increment_var(s: BadicPoint, t: BadicPoint, params: &ModelParams) -> Result<f64> {
    let n = s.level.max(t.level).max(1);
    let grid = GridSpec::new(n, params.b)?;
    let cells = grid.n_cells();
    let si = s.index * (cells / crate::model::checked_pow_u64(params.b, s.level)?);
    let ti = t.index * (cells / crate::model::checked_pow_u64(params.b, t.level)?);
    let denom = cells as f64;
    let mut fr_s = Vec::with_capacity(n as usize);
    let mut fr_t = Vec::with_capacity(n as usize);
    for m in 0..n {
        fr_s.push(grid.frac_index(si, m)? as f64 / denom);
        fr_t.push(grid.frac_index(ti, m)? as f64 / denom);
    }
    let mut terms = Vec::with_capacity((n * n) as usize);
    let mut alpha_m = 1.0f64;
    for m in 0..n as usize {
        let mut alpha_mp = 1.0f64;
        for mp in 0..n as usize {
            terms.push(
                alpha_m
                    * alpha_mp
                    * bridge_increment_cov(fr_s[m], fr_t[m], fr_s[mp], fr_t[mp], params),
            );
            alpha_mp *= params.alpha;
        }
        alpha_m *= params.alpha;
    }
    Ok(neumaier_sum(&terms))
}

/// Truncated covariance for arbitrary (non-b-adic) arguments, with the
/// reported tail bound.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TruncatedCov {
    pub value: f64,
    pub truncation: u32,
    /// Rigorous bound on the omitted tail: sup|cov_B| · Σ_{max(m,m')≥M} α^{m+m'}.
    pub tail_bound: f64,
}

/// Covariance from the series truncated at M terms. Valid for any s, t in
/// `[0,1]`; the error is bounded by `tail_bound`, which decays like α^M.
pub fn ww_cov_truncated(s: f64, t: f64, params: &ModelParams, truncation: u32) -> Result<TruncatedCov> {
    if !(0.0..=1.0).contains(&s) || !(0.0..=1.0).contains(&t) {
        return Err(WwbError::Domain(format!("arguments ({s},{t}) outside [0,1]")));
    }
    let b = f64::from(params.b);
    let mut value = 0.0f64;
    for m in 0..truncation {
        let sm = (s * b.powi(m as i32)).fract();
        for mp in 0..truncation {
            let tmp = (t * b.powi(mp as i32)).fract();
            value += params.alpha.powi((m + mp) as i32) * bridge_cov_unchecked(sm, tmp, params);
        }
    }
    // sup_u Var B(u) <= (u^H + kappa(u))^2 <= (1 + sup kappa)^2 = 4
    let sup_cov = 4.0;
    let geom_full = 1.0 / (1.0 - params.alpha);
    let geom_head = (1.0 - params.alpha.powi(truncation as i32)) / (1.0 - params.alpha);
    let tail_bound = sup_cov * (geom_full * geom_full - geom_head * geom_head);
    Ok(TruncatedCov { value, truncation, tail_bound })
}

/// Signed step representation of Y(t) − Y(s) as a Wiener integrand:
/// `g = Σ_{m<n} α^m 1_[{b^m s},{b^m t}] − (Σ_{m<n} α^m Δκ_m)·1_[0,1]`.
///
/// Contract: ⟨g, g⟩ equals the exact increment variance.
pub fn increment_step_repr(s: BadicPoint, t: BadicPoint, params: &ModelParams) -> Result<StepFunction> {
    let n = s.level.max(t.level).max(1);
    let grid = GridSpec::new(n, params.b)?;
    let cells = grid.n_cells();
    let si = s.index * (cells / crate::model::checked_pow_u64(params.b, s.level)?);
    let ti = t.index * (cells / crate::model::checked_pow_u64(params.b, t.level)?);
    let denom = cells as f64;
    let mut intervals = Vec::with_capacity(n as usize);
    let mut constant = 0.0f64;
    let mut alpha_m = 1.0f64;
    for m in 0..n {
        let sm = grid.frac_index(si, m)? as f64 / denom;
        let tm = grid.frac_index(ti, m)? as f64 / denom;
        intervals.push((sm, tm, alpha_m));
        constant -= alpha_m * params.kappa.increment(sm, tm, params.hurst);
        alpha_m *= params.alpha;
    }
    StepFunction::from_weighted_intervals(&intervals, constant)
}

/// Exact covariance matrix of Y on a full b-adic grid.
#[derive(Debug, Clone)]
pub struct CovMatrix {
    pub grid: GridSpec,
    pub params: ModelParams,
    /// Row-major symmetric matrix, (b^n + 1)².
    pub entries: Vec<f64>,
    pub n: usize,
}

/// Hard cap on grid cells for full-matrix assembly.
pub const COV_MATRIX_MAX_CELLS: u64 = 4096;

/// Assemble the exact covariance matrix on the level-n grid.
///
/// Precomputes the bridge covariance on the same grid once and contracts it
/// with the Weierstrass weights; rows are filled in parallel and every entry
/// is computed independently, so the result does not depend on the thread
/// count.
pub fn ww_cov_matrix(grid: GridSpec, params: &ModelParams) -> Result<CovMatrix> {
    if grid.b != params.b {
        return Err(WwbError::Parameter("grid base differs from model base".into()));
    }
    let cells = grid.n_cells();
    if cells > COV_MATRIX_MAX_CELLS {
        return Err(WwbError::Resource(format!(
            "grid has {cells} cells, exceeding the {COV_MATRIX_MAX_CELLS}-cell covariance cap"
        )));
    }
    let n_pts = grid.n_points();
    let level = grid.level;
    let denom = cells as f64;

    // bridge covariance table on the same grid
    let mut bridge = vec![0.0f64; n_pts * n_pts];
    bridge
        .par_chunks_mut(n_pts)
        .enumerate()
        .for_each(|(i, row)| {
            let u = i as f64 / denom;
            for (j, slot) in row.iter_mut().enumerate() {
                let v = j as f64 / denom;
                *slot = bridge_cov_unchecked(u, v, params);
            }
        });

    // fractional-part index table: idx[m][k]
    let mut idx = vec![vec![0usize; n_pts]; level as usize];
    for (m, row) in idx.iter_mut().enumerate() {
        for (k, slot) in row.iter_mut().enumerate() {
            *slot = grid.frac_index(k as u64, m as u32)? as usize;
        }
    }

    let alpha_pows: Vec<f64> = (0..level).map(|m| params.alpha.powi(m as i32)).collect();

    let mut entries = vec![0.0f64; n_pts * n_pts];
    entries
        .par_chunks_mut(n_pts)
        .enumerate()
        .for_each(|(k, row)| {
            for (l, slot) in row.iter_mut().enumerate() {
                let mut acc = 0.0f64;
                for m in 0..level as usize {
                    let km = idx[m][k];
                    let mut inner = 0.0f64;
                    for mp in 0..level as usize {
                        inner += alpha_pows[mp] * bridge[km * n_pts + idx[mp][l]];
                    }
                    acc += alpha_pows[m] * inner;
                }
                *slot = acc;
            }
        });

    Ok(CovMatrix { grid, params: *params, entries, n: n_pts })
}

impl CovMatrix {
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    /// Largest relative asymmetry max|C_ij − C_ji| / max|C|.
    pub fn symmetry_defect(&self) -> f64 {
        let mut max_abs = 0.0f64;
        let mut max_diff = 0.0f64;
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                max_abs = max_abs.max(self.at(i, j).abs());
                max_diff = max_diff.max((self.at(i, j) - self.at(j, i)).abs());
            }
        }
        if max_abs == 0.0 {
            0.0
        } else {
            max_diff / max_abs
        }
    }

    pub fn max_diagonal(&self) -> f64 {
        (0..self.n).map(|i| self.at(i, i)).fold(0.0, f64::max)
    }

    /// Smallest eigenvalue (symmetric eigendecomposition).
    pub fn min_eigenvalue(&self) -> f64 {
        let m = nalgebra::DMatrix::from_fn(self.n, self.n, |i, j| {
            0.5 * (self.at(i, j) + self.at(j, i))
        });
        let eig = m.symmetric_eigenvalues();
        eig.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// CSV export: row-major, 17 significant digits.
    pub fn to_csv<W: std::io::Write>(&self, mut w: W) -> Result<()> {
        for i in 0..self.n {
            let mut line = String::with_capacity(self.n * 26);
            for j in 0..self.n {
                if j > 0 {
                    line.push(',');
                }
                line.push_str(&format!("{:.16e}", self.at(i, j)));
            }
            line.push('\n');
            w.write_all(line.as_bytes())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::KappaSpec;

    fn params(alpha: f64, b: u32, h: f64) -> ModelParams {
        ModelParams::new(alpha, b, h, KappaSpec::Standard).unwrap()
    }

    #[test]
    fn fbm_cov_examples() {
        assert_eq!(fbm_cov(1.0, 1.0, 0.3).unwrap(), 1.0);
        assert!((fbm_cov(0.3, 0.7, 0.5).unwrap() - 0.3).abs() < 1e-15);
        // high-precision evaluation of the closed form
        let v = fbm_cov(0.25, 0.75, 0.75).unwrap();
        assert!((v - 0.2104828311225276).abs() < 1e-16);
        assert!(fbm_cov(-0.1, 0.5, 0.5).is_err());
    }

    #[test]
    fn increment_bilinear_examples() {
        assert!((increment_bilinear(0.0, 1.0, 0.0, 1.0, 0.3) - 1.0).abs() < 1e-15);
        assert_eq!(increment_bilinear(0.0, 1.0, 1.0, 2.0, 0.5), 0.0);
        let v = increment_bilinear(0.0, 1.0, 1.0, 2.0, 0.75);
        assert!((v - 0.41421356237309504).abs() < 1e-15);
    }

    #[test]
    fn increment_bilinear_signed_convention() {
        let v = increment_bilinear(0.0, 1.0, 1.0, 2.0, 0.75);
        let w = increment_bilinear(1.0, 0.0, 1.0, 2.0, 0.75);
        assert_eq!(v, -w);
    }

    #[test]
    fn separated_branch_matches_series_oracle() {
        // brute-force oracle: second difference of x^{2H} evaluated in f128-ish
        // style via the binomial series at much higher precision is not
        // available here, so instead compare against the direct formula at a
        // separation where the direct formula is still accurate (h ~ d/8:
        // cancellation costs ~6 digits, leaving ~1e-10 relative).
        for h in [0.3, 0.75] {
            let d: f64 = 0.5;
            for scale in [8.0, 9.0, 12.0] {
                let len = d / scale;
                let direct = {
                    let two_h = 2.0 * h;
                    0.5 * (pow_abs(d, two_h) + pow_abs(d + 2.0 * len, two_h)
                        - 2.0 * pow_abs(d + len, two_h))
                };
                let v = increment_bilinear(0.0, len, len + d, 2.0 * len + d, h);
                assert!(
                    (v - direct).abs() <= 1e-9 * direct.abs().max(1e-300),
                    "h={h} scale={scale}: {v} vs {direct}"
                );
            }
        }
    }

    #[test]
    fn step_bilinear_examples() {
        let unit = StepFunction::indicator(0.0, 1.0, 1.0).unwrap();
        assert!((step_bilinear(&unit, &unit, 0.3) - 1.0).abs() < 1e-15);

        let cancelled =
            StepFunction::from_weighted_intervals(&[(0.0, 1.0, 1.0), (0.0, 1.0, -1.0)], 0.0)
                .unwrap();
        assert_eq!(step_bilinear(&cancelled, &cancelled, 0.7), 0.0);

        // H = 1/2 is the L2 inner product
        let f = StepFunction::from_weighted_intervals(
            &[(0.0, 0.25, 1.5), (0.25, 0.8, -0.5), (1.0, 1.25, 2.0)],
            0.0,
        )
        .unwrap();
        let l2 = f.norm_l2_sq();
        assert!((step_bilinear(&f, &f, 0.5) - l2).abs() < 1e-13);
    }

    #[test]
    fn bridge_cov_examples() {
        let p = params(0.5, 2, 0.5);
        for t in [0.0, 0.25, 0.5, 1.0] {
            assert_eq!(bridge_cov(1.0, t, &p).unwrap(), 0.0);
            assert_eq!(bridge_cov(0.0, t, &p).unwrap(), 0.0);
        }
        // Brownian bridge closed form min(s,t) - st
        let v = bridge_cov(0.3, 0.7, &p).unwrap();
        assert!((v - 0.09).abs() < 1e-15);
        assert!(bridge_cov(1.2, 0.5, &p).is_err());
    }

    #[test]
    fn ww_cov_examples() {
        // pinned endpoints vanish for any t
        let p = params(0.6, 2, 0.35);
        let one = BadicPoint::new(8, 3, 2).unwrap();
        let zero = BadicPoint::new(0, 3, 2).unwrap();
        let t = BadicPoint::new(5, 3, 2).unwrap();
        assert_eq!(ww_cov(one, t, &p).unwrap(), 0.0);
        assert_eq!(ww_cov(zero, t, &p).unwrap(), 0.0);

        // Var Y(0.5) = 0.25 for b=2, H=1/2: only m=0 survives
        let p = params(0.37, 2, 0.5);
        let half = BadicPoint::new(1, 1, 2).unwrap();
        assert!((ww_cov(half, half, &p).unwrap() - 0.25).abs() < 1e-15);

        // Var Y(0.25), b=2, alpha=0.5, H=1/2: 0.1875 + 2*0.5*0.125 + 0.25*0.25
        let p = params(0.5, 2, 0.5);
        let q = BadicPoint::new(1, 2, 2).unwrap();
        assert!((ww_cov(q, q, &p).unwrap() - 0.375).abs() < 1e-15);
    }

    #[test]
    fn increment_repr_trivial_cases() {
        let p = params(0.5, 2, 0.4);
        let s = BadicPoint::new(3, 3, 2).unwrap();
        let g = increment_step_repr(s, s, &p).unwrap();
        assert!(g.is_zero());
        assert_eq!(step_bilinear(&g, &g, p.hurst), 0.0);

        let zero = BadicPoint::new(0, 1, 2).unwrap();
        let one = BadicPoint::new(2, 1, 2).unwrap();
        let g = increment_step_repr(zero, one, &p).unwrap();
        assert!(g.is_zero());
    }

    #[test]
    fn isometry_matches_double_sum_at_fine_level() {
        let p = params(0.5, 2, 0.3);
        let n = 9u32;
        let s = BadicPoint::new(0, n, 2).unwrap();
        let t = BadicPoint::new(1, n, 2).unwrap();
        let g = increment_step_repr(s, t, &p).unwrap();
        let iso = step_bilinear(&g, &g, p.hurst);
        let direct = ww_increment_var(s, t, &p).unwrap();
        assert!(
            (iso - direct).abs() <= 1e-10 * direct.abs(),
            "{iso} vs {direct}"
        );
    }

    #[test]
    fn truncated_mode_reports_tail() {
        let p = params(0.5, 2, 0.5);
        let tc = ww_cov_truncated(0.3, 0.3, &p, 25).unwrap();
        assert!(tc.tail_bound < 1e-6);
        assert!(tc.value > 0.0);
        // b-adic input agrees with the exact mode once the truncation covers
        // the level
        let q = BadicPoint::new(1, 2, 2).unwrap();
        let tv = ww_cov_truncated(0.25, 0.25, &p, 30).unwrap();
        assert!((tv.value - ww_cov(q, q, &p).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn cov_matrix_small_grid() {
        let p = params(0.5, 2, 0.5);
        let grid = GridSpec::new(1, 2).unwrap();
        let m = ww_cov_matrix(grid, &p).unwrap();
        // first and last rows identically zero
        for j in 0..m.n {
            assert_eq!(m.at(0, j), 0.0);
            assert_eq!(m.at(m.n - 1, j), 0.0);
        }
        assert!((m.at(1, 1) - 0.25).abs() < 1e-15);
        assert!(m.symmetry_defect() < 1e-12);
    }

    #[test]
    fn cov_matrix_diag_matches_pointwise() {
        let p = params(0.7, 2, 0.8);
        let grid = GridSpec::new(5, 2).unwrap();
        let m = ww_cov_matrix(grid, &p).unwrap();
        for k in 0..m.n {
            let pt = BadicPoint::new(k as u64, 5, 2).unwrap();
            let v = ww_cov(pt, pt, &p).unwrap();
            assert!((m.at(k, k) - v).abs() <= 1e-14 * v.abs().max(1.0));
        }
    }

    #[test]
    fn badic_recognition() {
        let p = BadicPoint::from_f64(0.375, 2, 12).unwrap();
        assert_eq!((p.index, p.level), (3, 3));
        assert!(BadicPoint::from_f64(0.3, 2, 12).is_err());
        let q = BadicPoint::from_f64(1.0, 3, 4).unwrap();
        assert_eq!((q.index, q.level), (1, 0));
    }
}
