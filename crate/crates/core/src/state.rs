//! Qubit states as points of the Bloch ball.
//!
//! A density matrix is written as
//!
//! ```text
//! ρ = ½ [[1 + x1,      x2 + i x3],
//!        [x2 − i x3,   1 − x1   ]]
//! ```
//!
//! with eigenvalues `(1 ± r)/2`. The spherical chart uses `x1` as its polar
//! axis. At `r = 0` the chart angles are reported as `(0, 0)` and on the
//! polar axis `φ = 0`, so grids touching the origin stay deterministic.

use core::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::error::{domain, Result};
use crate::linalg::{norm, Vec3};

/// Slack allowed on `|x| <= 1` for rounding in upstream arithmetic.
pub const BALL_SLACK: f64 = 1e-12;

/// Point in the spherical chart, `θ ∈ [0, π]`, `φ ∈ [0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Spherical {
    pub r: f64,
    pub theta: f64,
    pub phi: f64,
}

impl Spherical {
    pub const fn new(r: f64, theta: f64, phi: f64) -> Self {
        Self { r, theta, phi }
    }

    /// Componentwise `other − self`, with the azimuth difference wrapped
    /// into `(−π, π]`.
    pub fn delta_to(&self, other: &Spherical) -> [f64; 3] {
        [
            other.r - self.r,
            other.theta - self.theta,
            wrap_angle(other.phi - self.phi),
        ]
    }

    pub fn offset(&self, delta: [f64; 3]) -> Spherical {
        Spherical::new(
            self.r + delta[0],
            self.theta + delta[1],
            self.phi + delta[2],
        )
    }
}

fn wrap_angle(a: f64) -> f64 {
    let w = libm::remainder(a, TAU);
    if w <= -PI {
        w + TAU
    } else {
        w
    }
}

fn normalize_azimuth(phi: f64) -> f64 {
    let mut p = libm::fmod(phi, TAU);
    if p < 0.0 {
        p += TAU;
    }
    if p >= TAU {
        p = 0.0;
    }
    p
}

/// Cartesian coordinates of a spherical point; no domain checks.
pub fn cartesian_from_spherical(s: &Spherical) -> Vec3 {
    let (st, ct) = libm::sincos(s.theta);
    let (sp, cp) = libm::sincos(s.phi);
    [s.r * ct, s.r * st * cp, s.r * st * sp]
}

/// Spherical chart of a point of the closed ball.
pub fn spherical_from_cartesian(x: Vec3) -> Result<Spherical> {
    let r = norm(&x);
    if !(r <= 1.0 + BALL_SLACK) {
        return Err(domain("|x|", r, "the closed Bloch ball"));
    }
    if r == 0.0 {
        return Ok(Spherical::new(0.0, 0.0, 0.0));
    }
    let rho = libm::hypot(x[1], x[2]);
    let theta = libm::atan2(rho, x[0]);
    let phi = if rho == 0.0 {
        0.0
    } else {
        normalize_azimuth(libm::atan2(x[2], x[1]))
    };
    Ok(Spherical::new(r, theta, phi))
}

/// A qubit state, carried in both charts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitState {
    cartesian: Vec3,
    spherical: Spherical,
}

impl QubitState {
    pub fn maximally_mixed() -> Self {
        Self {
            cartesian: [0.0; 3],
            spherical: Spherical::new(0.0, 0.0, 0.0),
        }
    }

    pub fn from_cartesian(x: Vec3) -> Result<Self> {
        if x.iter().any(|v| !v.is_finite()) {
            return Err(domain("x", f64::NAN, "finite coordinates"));
        }
        let spherical = spherical_from_cartesian(x)?;
        Ok(Self {
            cartesian: x,
            spherical,
        })
    }

    /// Builds a state from chart coordinates. The given `r` and `θ` are kept
    /// verbatim; `φ` is reduced into `[0, 2π)`.
    pub fn from_spherical(s: Spherical) -> Result<Self> {
        if !(s.r >= 0.0 && s.r <= 1.0 + BALL_SLACK) {
            return Err(domain("r", s.r, "[0, 1]"));
        }
        if !(s.theta >= 0.0 && s.theta <= PI) {
            return Err(domain("theta", s.theta, "[0, π]"));
        }
        if !s.phi.is_finite() {
            return Err(domain("phi", s.phi, "finite angles"));
        }
        let spherical = Spherical::new(s.r, s.theta, normalize_azimuth(s.phi));
        Ok(Self {
            cartesian: cartesian_from_spherical(&spherical),
            spherical,
        })
    }

    pub fn cartesian(&self) -> Vec3 {
        self.cartesian
    }

    pub fn spherical(&self) -> Spherical {
        self.spherical
    }

    pub fn radius(&self) -> f64 {
        self.spherical.r
    }

    pub fn is_interior(&self) -> bool {
        self.spherical.r < 1.0
    }

    /// `((1 + r)/2, (1 − r)/2)`.
    pub fn eigenvalues(&self) -> (f64, f64) {
        let r = self.spherical.r;
        let lo = 0.5 * (1.0 - r);
        (1.0 - lo, lo)
    }

    pub fn density_matrix(&self) -> DensityMatrix2 {
        DensityMatrix2::from_bloch(self)
    }
}

/// Hermitian, unit-trace 2×2 matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix2 {
    entries: [[Complex64; 2]; 2],
}

impl DensityMatrix2 {
    pub fn from_bloch(s: &QubitState) -> Self {
        let [x1, x2, x3] = s.cartesian;
        let off = Complex64::new(0.5 * x2, 0.5 * x3);
        Self {
            entries: [
                [Complex64::new(0.5 * (1.0 + x1), 0.0), off],
                [off.conj(), Complex64::new(0.5 * (1.0 - x1), 0.0)],
            ],
        }
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row][col]
    }

    pub fn trace(&self) -> Complex64 {
        self.entries[0][0] + self.entries[1][1]
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        let e = &self.entries;
        e[0][0].im.abs() <= tol
            && e[1][1].im.abs() <= tol
            && (e[0][1] - e[1][0].conj()).norm() <= tol
    }

    /// Eigenvalues of the Hermitian part, descending.
    pub fn eigenvalues(&self) -> (f64, f64) {
        let a = self.entries[0][0].re;
        let d = self.entries[1][1].re;
        let b = self.entries[0][1];
        let half_gap = libm::hypot(0.5 * (a - d), b.norm());
        let mid = 0.5 * (a + d);
        (mid + half_gap, mid - half_gap)
    }

    pub fn bloch_vector(&self) -> Vec3 {
        let e = &self.entries;
        [(e[0][0] - e[1][1]).re, 2.0 * e[0][1].re, 2.0 * e[0][1].im]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn density_matrix_examples() {
        let rho = QubitState::maximally_mixed().density_matrix();
        assert_eq!(rho.entry(0, 0), Complex64::new(0.5, 0.0));
        assert_eq!(rho.entry(0, 1), Complex64::new(0.0, 0.0));
        assert_eq!(rho.entry(1, 1), Complex64::new(0.5, 0.0));

        let rho = QubitState::from_cartesian([1.0, 0.0, 0.0])
            .unwrap()
            .density_matrix();
        assert_eq!(rho.entry(0, 0).re, 1.0);
        assert_eq!(rho.entry(1, 1).re, 0.0);
        assert_eq!(rho.entry(0, 1).norm(), 0.0);

        let rho = QubitState::from_cartesian([0.0, 1.0, 0.0])
            .unwrap()
            .density_matrix();
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(rho.entry(i, j), Complex64::new(0.5, 0.0));
            }
        }
        assert_eq!(rho.trace(), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn off_ball_is_rejected() {
        assert!(QubitState::from_cartesian([0.8, 0.7, 0.0]).is_err());
        assert!(QubitState::from_spherical(Spherical::new(1.1, 0.3, 0.0)).is_err());
        assert!(QubitState::from_spherical(Spherical::new(0.5, -0.1, 0.0)).is_err());
        assert!(spherical_from_cartesian([0.0, 0.0, 1.5]).is_err());
    }

    #[test]
    fn eigenvalue_examples() {
        assert_eq!(QubitState::maximally_mixed().eigenvalues(), (0.5, 0.5));
        let pure = QubitState::from_cartesian([0.0, 0.0, 1.0]).unwrap();
        assert_eq!(pure.eigenvalues(), (1.0, 0.0));
        let s = QubitState::from_spherical(Spherical::new(0.646675, 2.51509, 5.89259)).unwrap();
        let (hi, lo) = s.eigenvalues();
        assert!(close(hi, 0.8233375, 1e-15) && close(lo, 0.1766625, 1e-15));
    }

    #[test]
    fn chart_examples() {
        let s = spherical_from_cartesian([0.0, 0.0, 1.0]).unwrap();
        assert!(close(s.r, 1.0, 1e-15));
        assert!(close(s.theta, PI / 2.0, 1e-15));
        assert!(close(s.phi, PI / 2.0, 1e-15));

        // Frozen from a 30-digit evaluation of the chart formulas.
        let x = cartesian_from_spherical(&Spherical::new(0.646675, 2.51509, 5.89259));
        assert!(close(x[0], -0.523_860_427_746_217, 1e-14));
        assert!(close(x[1], 0.350_598_377_034_208, 1e-14));
        assert!(close(x[2], -0.144_359_225_155_616, 1e-14));
    }

    #[test]
    fn degenerate_angles_are_zero() {
        assert_eq!(
            spherical_from_cartesian([0.0; 3]).unwrap(),
            Spherical::new(0.0, 0.0, 0.0)
        );
        let s = spherical_from_cartesian([-0.5, 0.0, 0.0]).unwrap();
        assert!(close(s.theta, PI, 1e-15));
        assert_eq!(s.phi, 0.0);
    }

    #[test]
    fn delta_wraps_azimuth() {
        let a = Spherical::new(0.5, 1.0, 6.2);
        let b = Spherical::new(0.5, 1.0, 0.01);
        let d = a.delta_to(&b);
        assert!(close(d[2], 0.01 + TAU - 6.2, 1e-12));
    }
}
