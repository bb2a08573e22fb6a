//! Adaptive Gauss–Kronrod quadrature with endpoint-singularity softening.
//!
//! Used by the quadrature route of the fractional-integral norms. Integrands
//! there are smooth away from step-function breakpoints but may carry an
//! integrable power singularity `(t − x)^{2β}` on the left side of each
//! breakpoint when β < 0. Panels are integrated with a 7-15 Gauss–Kronrod
//! pair and bisected adaptively; a panel whose right endpoint is flagged
//! singular is first transformed with `u = (t − x)^{β+1}`, which softens the
//! singularity, and refinement below an absolute width floor is abandoned so
//! sentinel values at the breakpoints themselves are never evaluated.

use crate::error::{Result, WwbError};

// 7-point Gauss, 15-point Kronrod on [-1, 1].
const XGK: [f64; 15] = [
    -0.991455371120813,
    -0.949107912342759,
    -0.864864423359769,
    -0.741531185599394,
    -0.586087235467691,
    -0.405845151377397,
    -0.207784955007898,
    0.0,
    0.207784955007898,
    0.405845151377397,
    0.586087235467691,
    0.741531185599394,
    0.864864423359769,
    0.949107912342759,
    0.991455371120813,
];
const WGK: [f64; 15] = [
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
    0.209482141084728,
    0.204432940075298,
    0.190350578064785,
    0.169004726639267,
    0.140653259715525,
    0.104790010322250,
    0.063092092629979,
    0.022935322010529,
];
const WG: [f64; 7] = [
    0.129484966168870,
    0.279705391489277,
    0.381830050505119,
    0.417959183673469,
    0.381830050505119,
    0.279705391489277,
    0.129484966168870,
];

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut kron = 0.0;
    let mut gauss = 0.0;
    for (i, (&x, &wk)) in XGK.iter().zip(WGK.iter()).enumerate() {
        let v = f(c + h * x);
        kron += wk * v;
        if i % 2 == 1 {
            gauss += WG[i / 2] * v;
        }
    }
    (kron * h, (kron - gauss).abs() * h)
}

/// Width floor below which refinement at a singular endpoint is abandoned.
pub const WIDTH_FLOOR: f64 = 1e-14;

/// Adaptive GK15 on `[a, b]`. Panels are bisected until the local error
/// estimate is below `rel_tol` relative to the running total (with an
/// absolute floor), or the panel is narrower than [`WIDTH_FLOOR`].
pub fn integrate_adaptive<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    rel_tol: f64,
) -> Result<f64> {
    if !(a.is_finite() && b.is_finite() && b > a) {
        return Err(WwbError::Numeric(format!("bad integration range [{a},{b}]")));
    }
    // stack of panels: (a, b, value, error)
    let (v0, e0) = gk15(f, a, b);
    let mut panels = vec![(a, b, v0, e0)];
    let mut total: f64 = v0;
    let mut total_err: f64 = e0;
    let max_panels = 40_000;
    while total_err > rel_tol * total.abs().max(1e-300) + 1e-300 {
        // split the worst panel
        let (idx, _) = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .expect("non-empty");
        let (pa, pb, pv, pe) = panels.swap_remove(idx);
        if pb - pa <= WIDTH_FLOOR {
            // refuse to refine further; accept this panel's value
            total_err -= pe;
            total += 0.0;
            panels.push((pa, pb, pv, 0.0));
            if panels.iter().all(|p| p.3 == 0.0) {
                break;
            }
            continue;
        }
        if panels.len() >= max_panels {
            return Err(WwbError::Numeric(format!(
                "quadrature failed to converge: {} panels, err {:.3e} vs total {:.3e}",
                panels.len(),
                total_err,
                total
            )));
        }
        let mid = 0.5 * (pa + pb);
        let (v1, e1) = gk15(f, pa, mid);
        let (v2, e2) = gk15(f, mid, pb);
        total += v1 + v2 - pv;
        total_err += e1 + e2 - pe;
        panels.push((pa, mid, v1, e1));
        panels.push((mid, pb, v2, e2));
    }
    Ok(panels.iter().map(|p| p.2).sum())
}

/// Integrate f over `[a, b]` where f has an integrable power singularity at the
/// right endpoint b of the form (b − x)^{2β} with 2β > −1.
///
/// Substitutes u = (b − x)^{β+1} (so x = b − u^{1/(β+1)}), which maps the
/// panel to [0, (b−a)^{β+1}] and softens the singularity.
pub fn integrate_right_singular<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    beta: f64,
    rel_tol: f64,
) -> Result<f64> {
    if beta >= 0.0 {
        return integrate_adaptive(f, a, b, rel_tol);
    }
    let gamma = beta + 1.0; // in (1/2, 1)
    let upper = (b - a).powf(gamma);
    let g = |u: f64| -> f64 {
        if u <= 0.0 {
            return 0.0;
        }
        let x = b - u.powf(1.0 / gamma);
        let jac = u.powf(1.0 / gamma - 1.0) / gamma;
        let v = f(x.min(b - WIDTH_FLOOR * 0.5));
        if v.is_finite() {
            v * jac
        } else {
            0.0
        }
    };
    integrate_adaptive(&g, 0.0, upper, rel_tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        let v = integrate_adaptive(&|x: f64| x * x * x - 2.0 * x + 1.0, 0.0, 2.0, 1e-12).unwrap();
        assert!((v - (4.0 - 4.0 + 2.0)).abs() < 1e-12);
    }

    #[test]
    fn smooth_transcendental() {
        let v = integrate_adaptive(&|x: f64| (-x).exp(), 0.0, 10.0, 1e-12).unwrap();
        assert!((v - (1.0 - (-10.0f64).exp())).abs() < 1e-11);
    }

    #[test]
    fn right_endpoint_singularity() {
        // ∫_0^1 (1-x)^{-1/2} dx = 2; here 2β = -1/2 ⇒ β = -0.25
        let v = integrate_right_singular(&|x: f64| (1.0 - x).powf(-0.5), 0.0, 1.0, -0.25, 1e-9)
            .unwrap();
        assert!((v - 2.0).abs() < 1e-7, "{v}");
    }

    #[test]
    fn adaptive_handles_mild_singularity_without_hint() {
        // ∫_0^1 x^{-0.4} dx = 1/0.6
        let v = integrate_adaptive(
            &|x: f64| if x <= 0.0 { 0.0 } else { x.powf(-0.4) },
            0.0,
            1.0,
            1e-8,
        )
        .unwrap();
        assert!((v - 1.0 / 0.6).abs() < 2e-6, "{v}");
    }
}
