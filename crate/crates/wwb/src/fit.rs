//! Log-log least squares, the common fitting primitive for scaling reports.

use serde::Serialize;

use crate::error::{Result, WwbError};

/// Result of an ordinary least-squares fit of log(stat) against log(scale).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct LogLogFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    /// Points dropped because scale or stat was non-finite or non-positive.
    pub dropped: usize,
}

/// OLS on (ln scale, ln stat); non-finite or non-positive pairs are dropped
/// with a count. Fails with fewer than 3 usable points.
pub fn fit_loglog(series: &[(f64, f64)]) -> Result<LogLogFit> {
    let pts: Vec<(f64, f64)> = series
        .iter()
        .filter(|(x, y)| x.is_finite() && y.is_finite() && *x > 0.0 && *y > 0.0)
        .map(|&(x, y)| (x.ln(), y.ln()))
        .collect();
    let dropped = series.len() - pts.len();
    if pts.len() < 3 {
        return Err(WwbError::Fit(format!(
            "need >= 3 usable points, have {} ({} dropped)",
            pts.len(),
            dropped
        )));
    }
    let n = pts.len() as f64;
    let mean_x = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    let mut syy = 0.0;
    for &(x, y) in &pts {
        sxx += (x - mean_x) * (x - mean_x);
        sxy += (x - mean_x) * (y - mean_y);
        syy += (y - mean_y) * (y - mean_y);
    }
    if sxx == 0.0 {
        return Err(WwbError::Fit("all scales identical".into()));
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let r_squared = if syy == 0.0 { 1.0 } else { (sxy * sxy) / (sxx * syy) };
    Ok(LogLogFit { slope, intercept, r_squared, dropped })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_power_law() {
        let series: Vec<(f64, f64)> = (1..=20).map(|i| {
            let x = i as f64 / 4.0;
            (x, x * x)
        }).collect();
        let fit = fit_loglog(&series).unwrap();
        assert!((fit.slope - 2.0).abs() < 1e-12);
        assert!((fit.r_squared - 1.0).abs() < 1e-12);
    }

    #[test]
    fn constant_series_has_zero_slope() {
        let series: Vec<(f64, f64)> = (1..=10).map(|i| (i as f64, 3.5)).collect();
        let fit = fit_loglog(&series).unwrap();
        assert!(fit.slope.abs() < 1e-14);
    }

    #[test]
    fn noisy_power_law_recovers_exponent() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(12345);
        let series: Vec<(f64, f64)> = (1..=200)
            .map(|i| {
                let x = 0.1 + i as f64 / 40.0;
                let noise = 1.0 + 0.01 * (rng.gen::<f64>() * 2.0 - 1.0);
                (x, x.powf(1.5) * noise)
            })
            .collect();
        let fit = fit_loglog(&series).unwrap();
        assert!((fit.slope - 1.5).abs() < 0.02, "slope {}", fit.slope);
    }

    #[test]
    fn drops_bad_points_and_errors_when_too_few() {
        let fit = fit_loglog(&[(1.0, 1.0), (2.0, f64::NAN), (3.0, 2.0), (4.0, 3.0), (-1.0, 2.0)])
            .unwrap();
        assert_eq!(fit.dropped, 2);
        assert!(fit_loglog(&[(1.0, 1.0), (2.0, 2.0)]).is_err());
    }
}
