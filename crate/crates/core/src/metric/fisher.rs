//! The partition function of the two-level exponential family and its
//! Hessian, an independent route to the Brody–Hughston tensor.

use core::f64::consts::PI;

use crate::error::{domain, Result};
use crate::linalg::{norm, Mat3, Vec3};
use crate::state::QubitState;

pub const DEFAULT_HESSIAN_STEP: f64 = 1e-4;

/// `ln(sinh(x)/x)`, even in `x`.
fn ln_sinhc(x: f64) -> f64 {
    let x = x.abs();
    if x < 1e-2 {
        let s = x * x;
        s * (1.0 / 6.0 + s * (-1.0 / 180.0 + s * (1.0 / 2835.0 - s / 37_800.0)))
    } else {
        libm::log(libm::sinh(x) / x)
    }
}

fn ln_prefactor() -> f64 {
    libm::log(8.0 * PI * PI * PI) - 0.5
}

/// `ln Z` at Bloch radius `r`.
pub fn ln_generating_function(r: f64) -> f64 {
    ln_prefactor() + ln_sinhc(0.5 * r)
}

/// `Z = 16π³ sinh(r/2) / (√e r)`, with the limit `8π³/√e` at the origin.
pub fn generating_function(s: &QubitState) -> f64 {
    libm::exp(ln_generating_function(s.radius()))
}

/// `Z = (2π)³ (e^{−λ₂} − e^{−λ₁}) / (λ₁ − λ₂)` written directly in the
/// eigenvalues; equal eigenvalues give the limit `(2π)³ e^{−λ}`.
pub fn generating_function_from_eigenvalues(l1: f64, l2: f64) -> f64 {
    let (hi, lo) = if l1 >= l2 { (l1, l2) } else { (l2, l1) };
    let gap = hi - lo;
    let ratio = if gap == 0.0 {
        1.0
    } else {
        libm::expm1(gap) / gap
    };
    8.0 * PI * PI * PI * libm::exp(-hi) * ratio
}

/// Central-difference Hessian of `ln Z` in Cartesian coordinates,
/// symmetrised. Requires `step ∈ [1e-6, 1e-3]` and `r + 3·step < 1`.
pub fn fisher_from_generating(s: &QubitState, step: f64) -> Result<Mat3> {
    if !(1e-6..=1e-3).contains(&step) {
        return Err(domain("step", step, "[1e-6, 1e-3]"));
    }
    let x = s.cartesian();
    let r = norm(&x);
    if !(r + 3.0 * step < 1.0) {
        return Err(domain("r + 3·step", r + 3.0 * step, "the open ball"));
    }
    // The additive constant of ln Z cancels in every difference.
    let f = |d: Vec3| ln_sinhc(0.5 * norm(&[x[0] + d[0], x[1] + d[1], x[2] + d[2]]));
    let e = |i: usize, h: f64| {
        let mut v = [0.0; 3];
        v[i] = h;
        v
    };
    let add = |a: Vec3, b: Vec3| [a[0] + b[0], a[1] + b[1], a[2] + b[2]];
    let centre = f([0.0; 3]);
    let h2 = step * step;
    let mut hess = [[0.0; 3]; 3];
    for i in 0..3 {
        hess[i][i] = (f(e(i, step)) - 2.0 * centre + f(e(i, -step))) / h2;
        for j in 0..i {
            let v = (f(add(e(i, step), e(j, step)))
                - f(add(e(i, step), e(j, -step)))
                - f(add(e(i, -step), e(j, step)))
                + f(add(e(i, -step), e(j, -step))))
                / (4.0 * h2);
            hess[i][j] = v;
            hess[j][i] = v;
        }
    }
    Ok(hess)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::MetricModel;
    use crate::state::Spherical;

    #[test]
    fn limits() {
        let z0 = generating_function(&QubitState::maximally_mixed());
        assert!((z0 - 150.450_059_601).abs() < 1e-8);
        let pure = QubitState::from_cartesian([0.0, 1.0, 0.0]).unwrap();
        assert!((generating_function(&pure) - 156.797_639_539).abs() < 1e-8);
    }

    #[test]
    fn eigenvalue_form_agrees() {
        for i in 0..=100 {
            let r = i as f64 / 100.0;
            let s = QubitState::from_spherical(Spherical::new(r, 1.0, 2.0)).unwrap();
            let (a, b) = s.eigenvalues();
            let z = generating_function(&s);
            assert!((generating_function_from_eigenvalues(a, b) / z - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn hessian_at_origin() {
        let h =
            fisher_from_generating(&QubitState::maximally_mixed(), DEFAULT_HESSIAN_STEP).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { 1.0 / 12.0 } else { 0.0 };
                assert!((h[i][j] - want).abs() < 1e-6);
            }
        }
    }

    #[test]
    fn hessian_matches_bh_tensor() {
        let s = QubitState::from_cartesian([0.4, -0.3, 0.5]).unwrap();
        let h = fisher_from_generating(&s, DEFAULT_HESSIAN_STEP).unwrap();
        let g = MetricModel::BrodyHughston
            .tensor_cartesian(s.cartesian())
            .unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert!((h[i][j] - g[i][j]).abs() < 1e-5 * g[i][i]);
                assert_eq!(h[i][j], h[j][i]);
            }
        }
    }

    #[test]
    fn stencil_checks() {
        let s = QubitState::from_cartesian([0.9995, 0.0, 0.0]).unwrap();
        assert!(fisher_from_generating(&s, 1e-3).is_err());
        assert!(fisher_from_generating(&QubitState::maximally_mixed(), 1e-2).is_err());
    }
}
