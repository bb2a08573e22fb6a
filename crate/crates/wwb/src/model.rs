//! Model parameters, the bridge-shape function, and b-adic grid arithmetic.
//!
//! The process under study is `Y(t) = Σ_{m≥0} α^m B_H({b^m t})`, where `B_H`
//! is a fractional Brownian bridge `W_H(t) − κ(t) W_H(1)` and `{x}` denotes
//! the fractional part. Everything downstream is governed by the triple
//! `(α, b, H)` together with the derived exponent `K = min(1, −log_b α)`:
//! the fine structure of the paths bifurcates on the relation between `H`
//! and `K`.

use serde::{Deserialize, Serialize};

use crate::error::{Result, WwbError};

/// Tolerance at which `H` and `K` are declared equal (critical regime).
pub const REGIME_EQ_TOL: f64 = 1e-12;

/// Shape function κ of the bridge `B_H(t) = W_H(t) − κ(t) W_H(1)`.
///
/// Both variants satisfy κ(0) = 0, κ(1) = 1 and are Hölder with some
/// exponent τ > H (`Standard` has τ = min(1, 2H), `Linear` has τ = 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KappaSpec {
    /// κ(t) = ½(1 + t^{2H} − (1−t)^{2H}); with this choice the bridge law
    /// equals the law of `W_H` conditioned on `W_H(1) = 0`.
    Standard,
    /// κ(t) = t.
    Linear,
}

impl KappaSpec {
    /// Evaluate κ(t). Endpoints are exact: κ(0) = 0, κ(1) = 1.
    pub fn eval(self, t: f64, hurst: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&t) {
            return Err(WwbError::Domain(format!("kappa argument {t} outside [0,1]")));
        }
        Ok(self.eval_unchecked(t, hurst))
    }

    #[inline]
    pub(crate) fn eval_unchecked(self, t: f64, hurst: f64) -> f64 {
        match self {
            KappaSpec::Linear => t,
            KappaSpec::Standard => {
                if t == 0.0 {
                    0.0
                } else if t == 1.0 {
                    1.0
                } else {
                    let two_h = 2.0 * hurst;
                    0.5 * (1.0 + crate::gaussian::pow_abs(t, two_h)
                        - crate::gaussian::pow_abs(1.0 - t, two_h))
                }
            }
        }
    }

    /// κ(t) − κ(s), computed without cancellation for nearby arguments.
    #[inline]
    pub(crate) fn increment(self, s: f64, t: f64, hurst: f64) -> f64 {
        match self {
            KappaSpec::Linear => t - s,
            KappaSpec::Standard => {
                let two_h = 2.0 * hurst;
                // ½[(t^{2H} − s^{2H}) + ((1−s)^{2H} − (1−t)^{2H})], both
                // brackets share the sign of t − s.
                0.5 * (crate::gaussian::diff_pow(t, s, two_h)
                    + crate::gaussian::diff_pow(1.0 - s, 1.0 - t, two_h))
            }
        }
    }
}

/// Relation between the Hurst exponent `H` and the Weierstrass exponent `K`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    /// H < K: the paths inherit fBm-like fine structure.
    HBelowK,
    /// |H − K| ≤ 1e−12: the critical phase with log-corrected scaling.
    Critical,
    /// H > K: Weierstrass-fractal behaviour with exponent K.
    HAboveK,
}

/// K = min(1, −log_b α) for α ∈ (0, 1), b > 1.
pub fn derive_k(alpha: f64, b: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(WwbError::Parameter(format!("alpha {alpha} not in (0,1)")));
    }
    if !b.is_finite() || b <= 1.0 {
        return Err(WwbError::Parameter(format!("base {b} must exceed 1")));
    }
    Ok((-alpha.ln() / b.ln()).min(1.0))
}

/// The model triple (α, b, H) with κ choice and derived K.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ModelParams {
    pub alpha: f64,
    pub b: u32,
    pub hurst: f64,
    pub kappa: KappaSpec,
    /// Derived roughness exponent of the Weierstrass convolution.
    pub k: f64,
}

impl ModelParams {
    /// Construct from (α, b, H); K is recomputed from (α, b).
    pub fn new(alpha: f64, b: u32, hurst: f64, kappa: KappaSpec) -> Result<Self> {
        if b < 2 {
            return Err(WwbError::Parameter(format!("integer base {b} must be >= 2")));
        }
        if !(hurst > 0.0 && hurst < 1.0) {
            return Err(WwbError::Parameter(format!("hurst {hurst} not in (0,1)")));
        }
        let k = derive_k(alpha, f64::from(b))?;
        Ok(Self { alpha, b, hurst, kappa, k })
    }

    /// Critical-phase constructor: α is set to b^{−H} so that K = H exactly,
    /// sidestepping the floating-point roundoff of −log_b α.
    pub fn critical(b: u32, hurst: f64, kappa: KappaSpec) -> Result<Self> {
        if b < 2 {
            return Err(WwbError::Parameter(format!("integer base {b} must be >= 2")));
        }
        if !(hurst > 0.0 && hurst < 1.0) {
            return Err(WwbError::Parameter(format!("hurst {hurst} not in (0,1)")));
        }
        let alpha = f64::from(b).powf(-hurst);
        Ok(Self { alpha, b, hurst, kappa, k: hurst })
    }

    /// Regime classification with equality tolerance 1e−12.
    pub fn regime(&self) -> Regime {
        if (self.hurst - self.k).abs() <= REGIME_EQ_TOL {
            Regime::Critical
        } else if self.hurst < self.k {
            Regime::HBelowK
        } else {
            Regime::HAboveK
        }
    }

    /// min(H, K), the roughness exponent of the sample paths.
    pub fn min_hk(&self) -> f64 {
        self.hurst.min(self.k)
    }

    pub fn kappa_at(&self, t: f64) -> f64 {
        self.kappa.eval_unchecked(t, self.hurst)
    }
}

/// The b-adic grid {k·b^{−n} : k = 0..b^n} at refinement level n.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct GridSpec {
    pub level: u32,
    pub b: u32,
}

impl GridSpec {
    pub fn new(level: u32, b: u32) -> Result<Self> {
        if b < 2 {
            return Err(WwbError::Parameter(format!("grid base {b} must be >= 2")));
        }
        if level == 0 {
            return Err(WwbError::Parameter("grid level must be >= 1".into()));
        }
        // b^level must fit comfortably in u64 for exact index arithmetic.
        let _ = checked_pow_u64(b, level)?;
        Ok(Self { level, b })
    }

    /// Number of grid cells b^n (points are 0..=n_cells).
    pub fn n_cells(&self) -> u64 {
        checked_pow_u64(self.b, self.level).expect("validated at construction")
    }

    /// Number of grid points b^n + 1.
    pub fn n_points(&self) -> usize {
        (self.n_cells() + 1) as usize
    }

    /// The grid point k·b^{−n} as f64.
    pub fn point(&self, k: u64) -> f64 {
        k as f64 / self.n_cells() as f64
    }

    /// Grid index of {b^m · (k b^{−n})}, i.e. (k·b^m mod b^n), in exact
    /// integer arithmetic. For m ≥ n the result is 0.
    pub fn frac_index(&self, k: u64, m: u32) -> Result<u64> {
        frac_index(k, m, self.level, self.b)
    }
}

/// (k·b^m) mod b^n: the grid index of the fractional part {b^m · k b^{-n}}.
///
/// Computed with overflow-checked widening; reduces k·b^m modulo b^n one
/// factor of b at a time so intermediates never exceed b·b^n.
pub fn frac_index(k: u64, m: u32, n: u32, b: u32) -> Result<u64> {
    let modulus = checked_pow_u64(b, n)?;
    if k > modulus {
        return Err(WwbError::Grid(format!(
            "index {k} out of range for level-{n} base-{b} grid"
        )));
    }
    if m >= n {
        // b^n divides b^m, so k·b^m ≡ 0.
        return Ok(0);
    }
    let mut acc = k % modulus;
    for _ in 0..m {
        acc = acc
            .checked_mul(u64::from(b))
            .ok_or_else(|| WwbError::Grid("frac_index overflow".into()))?
            % modulus;
    }
    Ok(acc)
}

pub(crate) fn checked_pow_u64(b: u32, n: u32) -> Result<u64> {
    let mut acc: u64 = 1;
    for _ in 0..n {
        acc = acc
            .checked_mul(u64::from(b))
            .ok_or_else(|| WwbError::Grid(format!("b^n overflows u64 (b={b}, n={n})")))?;
    }
    if acc > (1u64 << 53) {
        return Err(WwbError::Grid(format!(
            "b^n = {acc} exceeds exact f64 integer range"
        )));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derive_k_known_values() {
        assert_eq!(derive_k(0.5, 2.0).unwrap(), 1.0);
        assert_eq!(derive_k(0.25, 2.0).unwrap(), 1.0);
        // high-precision oracle: -ln 0.7 / ln 2
        let k = derive_k(0.7, 2.0).unwrap();
        assert!((k - 0.5145731728297582).abs() < 1e-15);
    }

    #[test]
    fn derive_k_rejects_bad_params() {
        assert!(derive_k(0.0, 2.0).is_err());
        assert!(derive_k(1.0, 2.0).is_err());
        assert!(derive_k(0.5, 1.0).is_err());
    }

    #[test]
    fn kappa_endpoints_and_symmetry() {
        for kappa in [KappaSpec::Standard, KappaSpec::Linear] {
            for h in [0.25, 0.5, 0.75] {
                assert_eq!(kappa.eval(0.0, h).unwrap(), 0.0);
                assert_eq!(kappa.eval(1.0, h).unwrap(), 1.0);
            }
        }
        // symmetry point: ½(1 + x − x) = ½
        assert!((KappaSpec::Standard.eval(0.5, 0.75).unwrap() - 0.5).abs() < 1e-15);
        // H = 1/2 makes the standard kappa linear
        assert!((KappaSpec::Standard.eval(0.25, 0.5).unwrap() - 0.25).abs() < 1e-15);
        assert!(KappaSpec::Standard.eval(1.5, 0.5).is_err());
    }

    #[test]
    fn kappa_standard_matches_linear_at_half() {
        for i in 0..=1000 {
            let t = i as f64 / 1000.0;
            let a = KappaSpec::Standard.eval(t, 0.5).unwrap();
            let b = KappaSpec::Linear.eval(t, 0.5).unwrap();
            assert!((a - b).abs() < 1e-15, "t={t}: {a} vs {b}");
        }
    }

    #[test]
    fn frac_index_examples() {
        // {2 * 0.25} = 0.5 on the level-2 dyadic grid
        assert_eq!(frac_index(1, 1, 2, 2).unwrap(), 2);
        // {2 * 0.75} = 0.5
        assert_eq!(frac_index(3, 1, 2, 2).unwrap(), 2);
        // m >= n always lands on 0
        for m in 3..10 {
            assert_eq!(frac_index(5, m, 3, 2).unwrap(), 0);
        }
    }

    #[test]
    fn frac_index_composes() {
        let (n, b) = (10u32, 3u32);
        let modulus = checked_pow_u64(b, n).unwrap();
        for k in [0u64, 1, 17, 100, modulus - 1] {
            for m1 in 0..6 {
                for m2 in 0..6 {
                    let one = frac_index(frac_index(k, m1, n, b).unwrap(), m2, n, b).unwrap();
                    let two = frac_index(k, m1 + m2, n, b).unwrap();
                    assert_eq!(one, two);
                }
            }
        }
    }

    #[test]
    fn critical_constructor_hits_regime_exactly() {
        let p = ModelParams::critical(2, 0.6, KappaSpec::Standard).unwrap();
        assert_eq!(p.regime(), Regime::Critical);
        assert_eq!(p.k, 0.6);
        // recomputed K agrees within the regime tolerance
        let k2 = derive_k(p.alpha, 2.0).unwrap();
        assert!((k2 - 0.6).abs() <= REGIME_EQ_TOL);
    }

    #[test]
    fn regime_classification() {
        let below = ModelParams::new(0.5, 2, 0.3, KappaSpec::Standard).unwrap();
        assert_eq!(below.regime(), Regime::HBelowK);
        let above = ModelParams::new(0.7, 2, 0.8, KappaSpec::Standard).unwrap();
        assert_eq!(above.regime(), Regime::HAboveK);
        assert!((above.k - 0.5145731728297582).abs() < 1e-15);
    }
}
