//! Piecewise-constant functions on the half-line.
//!
//! `StepFunction` is the universal carrier for Wiener-integral work in this
//! crate: signed increment representations of the process, homogeneous
//! indicator families, and inputs to the fractional-integral operators. A
//! function is a finite list of disjoint constant pieces plus an optional
//! `constant_part` that multiplies the indicator of `[0, 1]` (constants picked
//! up by bridge terms are absorbed there).

use crate::error::{Result, WwbError};

/// Canonical piecewise-constant function: value `values[i]` on
/// `[breakpoints[i], breakpoints[i+1])`, zero outside, plus
/// `constant_part · 1_[0,1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct StepFunction {
    breakpoints: Vec<f64>,
    values: Vec<f64>,
    constant_part: f64,
}

/// One disjoint constant piece, produced by [`StepFunction::flatten`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Piece {
    pub start: f64,
    pub end: f64,
    pub value: f64,
}

impl StepFunction {
    /// The zero function.
    pub fn zero() -> Self {
        Self { breakpoints: Vec::new(), values: Vec::new(), constant_part: 0.0 }
    }

    /// `c · 1_[0,1]`.
    pub fn constant_on_unit(c: f64) -> Self {
        Self { breakpoints: Vec::new(), values: Vec::new(), constant_part: c }
    }

    /// Indicator of `[a, b]` scaled by `w`. A reversed interval (`b < a`)
    /// means `−w · 1_{[b,a]}`.
    pub fn indicator(a: f64, b: f64, w: f64) -> Result<Self> {
        Self::from_weighted_intervals(&[(a, b, w)], 0.0)
    }

    /// Build from signed weighted intervals `(a_i, b_i, w_i)`; overlapping
    /// intervals have their weights summed. `a > b` flips the sign of `w`.
    /// All endpoints must be finite and ≥ 0.
    ///
    /// Each region between consecutive endpoints gets its value from a fresh
    /// compensated sum over the intervals covering it, so regions covered by
    /// nothing (or by exactly cancelling weights) come out exactly zero —
    /// a running sweep level would leave ulp-sized phantom pieces instead.
    pub fn from_weighted_intervals(intervals: &[(f64, f64, f64)], constant_part: f64) -> Result<Self> {
        let mut spans: Vec<(f64, f64, f64)> = Vec::with_capacity(intervals.len());
        for &(a, b, w) in intervals {
            if !a.is_finite() || !b.is_finite() {
                return Err(WwbError::Parameter("non-finite interval endpoint".into()));
            }
            if a.min(b) < 0.0 {
                return Err(WwbError::Parameter("interval endpoint below 0".into()));
            }
            if a == b || w == 0.0 {
                continue;
            }
            let (lo, hi, wt) = if a < b { (a, b, w) } else { (b, a, -w) };
            spans.push((lo, hi, wt));
        }
        if spans.is_empty() {
            let mut f = Self::zero();
            f.constant_part = constant_part;
            return Ok(f);
        }
        let mut cuts: Vec<f64> = spans.iter().flat_map(|&(lo, hi, _)| [lo, hi]).collect();
        cuts.sort_by(f64::total_cmp);
        cuts.dedup();
        let mut values = Vec::with_capacity(cuts.len() - 1);
        for region in cuts.windows(2) {
            let mut sum = 0.0f64;
            let mut comp = 0.0f64;
            for &(lo, hi, w) in &spans {
                if lo <= region[0] && hi >= region[1] {
                    let s = sum + w;
                    if sum.abs() >= w.abs() {
                        comp += (sum - s) + w;
                    } else {
                        comp += (w - s) + sum;
                    }
                    sum = s;
                }
            }
            values.push(sum + comp);
        }
        let mut f = Self { breakpoints: cuts, values, constant_part };
        f.canonicalize();
        Ok(f)
    }

    /// Merge equal adjacent values and trim zero-valued edge pieces.
    fn canonicalize(&mut self) {
        if self.values.is_empty() {
            self.breakpoints.clear();
            return;
        }
        let mut bp2 = vec![self.breakpoints[0]];
        let mut vals2: Vec<f64> = Vec::new();
        for (i, &v) in self.values.iter().enumerate() {
            match vals2.last() {
                Some(&last) if last == v => {
                    *bp2.last_mut().unwrap() = self.breakpoints[i + 1];
                }
                _ => {
                    vals2.push(v);
                    bp2.push(self.breakpoints[i + 1]);
                }
            }
        }
        // trim zero pieces at the edges
        while vals2.first() == Some(&0.0) {
            vals2.remove(0);
            bp2.remove(0);
        }
        while vals2.last() == Some(&0.0) {
            vals2.pop();
            bp2.pop();
        }
        if vals2.is_empty() {
            bp2.clear();
        }
        self.breakpoints = bp2;
        self.values = vals2;
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn constant_part(&self) -> f64 {
        self.constant_part
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0.0) && self.constant_part == 0.0
    }

    /// Pointwise evaluation (right-continuous; zero outside the support).
    pub fn eval(&self, x: f64) -> f64 {
        let mut v = 0.0;
        if !self.values.is_empty()
            && x >= self.breakpoints[0]
            && x < *self.breakpoints.last().unwrap()
        {
            let i = match self.breakpoints.binary_search_by(|p| p.total_cmp(&x)) {
                Ok(i) => i,
                Err(i) => i - 1,
            };
            if i < self.values.len() {
                v = self.values[i];
            }
        }
        if (0.0..1.0).contains(&x) {
            v += self.constant_part;
        }
        v
    }

    /// Sum of two step functions.
    pub fn add(&self, other: &Self) -> Self {
        let mut intervals: Vec<(f64, f64, f64)> = Vec::new();
        for f in [self, other] {
            for p in f.step_pieces() {
                intervals.push((p.start, p.end, p.value));
            }
        }
        Self::from_weighted_intervals(&intervals, self.constant_part + other.constant_part)
            .expect("valid pieces")
    }

    /// Scale by a constant.
    pub fn scale(&self, c: f64) -> Self {
        let mut out = self.clone();
        for v in &mut out.values {
            *v *= c;
        }
        out.constant_part *= c;
        out.canonicalize();
        out
    }

    /// Rescale the argument: returns x ↦ f(x / c) for c > 0.
    pub fn dilate(&self, c: f64) -> Result<Self> {
        if !c.is_finite() || c <= 0.0 {
            return Err(WwbError::Parameter("dilation factor must be positive".into()));
        }
        if self.constant_part != 0.0 {
            return Err(WwbError::Parameter(
                "dilate is only defined for functions without a constant part".into(),
            ));
        }
        let mut out = self.clone();
        for b in &mut out.breakpoints {
            *b *= c;
        }
        Ok(out)
    }

    /// The explicit pieces (excluding the constant part).
    pub fn step_pieces(&self) -> Vec<Piece> {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, v)| **v != 0.0)
            .map(|(i, &value)| Piece { start: self.breakpoints[i], end: self.breakpoints[i + 1], value })
            .collect()
    }

    /// Disjoint pieces of the full function with the constant part folded in.
    pub fn flatten(&self) -> Vec<Piece> {
        if self.constant_part == 0.0 {
            return self.step_pieces();
        }
        let mut intervals: Vec<(f64, f64, f64)> = self
            .step_pieces()
            .into_iter()
            .map(|p| (p.start, p.end, p.value))
            .collect();
        intervals.push((0.0, 1.0, self.constant_part));
        Self::from_weighted_intervals(&intervals, 0.0)
            .expect("valid pieces")
            .step_pieces()
    }

    /// Total length of the support (after flattening).
    pub fn support_length(&self) -> f64 {
        self.flatten().iter().map(|p| p.end - p.start).sum()
    }

    /// Smallest and largest breakpoint of the flattened function.
    pub fn support_bounds(&self) -> Option<(f64, f64)> {
        let pieces = self.flatten();
        let lo = pieces.first()?.start;
        let hi = pieces.last()?.end;
        Some((lo, hi))
    }

    /// ∫ |f|^p dx.
    pub fn norm_lp_pow(&self, p: f64) -> f64 {
        self.flatten()
            .iter()
            .map(|pc| pc.value.abs().powf(p) * (pc.end - pc.start))
            .sum()
    }

    /// L^p norm (∫ |f|^p)^{1/p}.
    pub fn norm_lp(&self, p: f64) -> f64 {
        self.norm_lp_pow(p).powf(1.0 / p)
    }

    /// Squared L² norm.
    pub fn norm_l2_sq(&self) -> f64 {
        self.flatten()
            .iter()
            .map(|pc| pc.value * pc.value * (pc.end - pc.start))
            .sum()
    }

    /// True if every flattened piece of `self` lies inside the union of the
    /// given closed intervals.
    pub fn supported_in(&self, intervals: &[(f64, f64)]) -> bool {
        self.flatten().iter().all(|p| {
            intervals
                .iter()
                .any(|&(a, b)| p.start >= a - 1e-12 && p.end <= b + 1e-12)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_merges_and_trims() {
        let f = StepFunction::from_weighted_intervals(&[(0.0, 1.0, 2.0), (1.0, 2.0, 2.0)], 0.0)
            .unwrap();
        assert_eq!(f.breakpoints(), &[0.0, 2.0]);
        assert_eq!(f.values(), &[2.0]);
    }

    #[test]
    fn cancelled_intervals_vanish() {
        let f = StepFunction::from_weighted_intervals(&[(0.0, 1.0, 1.0), (1.0, 0.0, 1.0)], 0.0)
            .unwrap();
        assert!(f.is_zero());
        assert_eq!(f.norm_l2_sq(), 0.0);
    }

    #[test]
    fn signed_interval_convention() {
        // 1_{[2,1]} = -1_{[1,2]}
        let f = StepFunction::indicator(2.0, 1.0, 1.0).unwrap();
        assert_eq!(f.values(), &[-1.0]);
        assert_eq!(f.eval(1.5), -1.0);
    }

    #[test]
    fn overlaps_stack() {
        let f = StepFunction::from_weighted_intervals(
            &[(0.0, 2.0, 1.0), (1.0, 3.0, 0.5)],
            0.0,
        )
        .unwrap();
        assert_eq!(f.eval(0.5), 1.0);
        assert_eq!(f.eval(1.5), 1.5);
        assert_eq!(f.eval(2.5), 0.5);
        assert_eq!(f.eval(3.5), 0.0);
    }

    #[test]
    fn constant_part_folds_into_flatten() {
        let f = StepFunction::from_weighted_intervals(&[(0.25, 0.5, 1.0)], -0.5).unwrap();
        assert_eq!(f.eval(0.3), 0.5);
        assert_eq!(f.eval(0.7), -0.5);
        let l2 = f.norm_l2_sq();
        // 0.25·0.25 + 0.75·0.25 = 0.25
        assert!((l2 - 0.25).abs() < 1e-15);
    }

    #[test]
    fn lp_norms() {
        let f = StepFunction::from_weighted_intervals(&[(0.0, 0.5, 2.0), (0.5, 1.0, -1.0)], 0.0)
            .unwrap();
        assert!((f.norm_lp_pow(2.0) - (4.0 * 0.5 + 1.0 * 0.5)).abs() < 1e-15);
        assert!((f.norm_lp(1.0) - 1.5).abs() < 1e-15);
    }

    #[test]
    fn interior_zero_retained_between_distinct_values() {
        let f = StepFunction::from_weighted_intervals(&[(0.0, 1.0, 1.0), (2.0, 3.0, 2.0)], 0.0)
            .unwrap();
        assert_eq!(f.values(), &[1.0, 0.0, 2.0]);
        assert_eq!(f.eval(1.5), 0.0);
    }
}
