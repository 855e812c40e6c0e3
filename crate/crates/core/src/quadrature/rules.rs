//! One-dimensional rules and the tensor-product grid they span.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI, TAU};

use crate::error::{Error, Result};
use crate::metric::Radius;

/// Gauss–Legendre nodes and weights on `[-1, 1]`, ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Newton iteration on `P_n` from the Tricomi initial guesses.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "a Gauss–Legendre rule needs at least one node");
        let mut nodes = alloc::vec![0.0; n];
        let mut weights = alloc::vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = libm::cos(PI * (i as f64 + 0.75) / (nf + 0.5));
            let mut dp = 1.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() <= 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            dp = if d != 0.0 { d } else { dp };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Nodes and weights mapped to `[0, 1]`.
    pub fn unit_interval(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| (0.5 * (1.0 + x), 0.5 * w))
    }
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Substitution applied to the radial coordinate before Gauss–Legendre.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum RadialMap {
    /// `r = s`.
    Linear,
    /// `r = sin(πs/2)`, which absorbs `(1 − r²)^{−1/2}`.
    Sine,
    /// `r = sin ψ` with `ψ = (π/2)(10s³ − 15s⁴ + 6s⁵)`; the quintic grading
    /// also flattens logarithmic endpoint singularities.
    #[default]
    GradedSine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum AzimuthalRule {
    /// Equally spaced nodes; spectrally accurate for periodic integrands.
    #[default]
    Trapezoid,
    GaussLegendre,
}

/// Node counts and rules of the tensor-product grid.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct QuadratureSpec {
    pub radial: usize,
    pub polar: usize,
    pub azimuthal: usize,
    pub radial_map: RadialMap,
    pub azimuthal_rule: AzimuthalRule,
    /// Agreement required between a grid and its doubling.
    pub tolerance: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            radial: 96,
            polar: 64,
            azimuthal: 64,
            radial_map: RadialMap::GradedSine,
            azimuthal_rule: AzimuthalRule::Trapezoid,
            tolerance: 1e-6,
        }
    }
}

impl QuadratureSpec {
    pub const MIN_NODES: usize = 8;

    pub fn with_nodes(radial: usize, polar: usize, azimuthal: usize) -> Self {
        Self {
            radial,
            polar,
            azimuthal,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let counts = [self.radial, self.polar, self.azimuthal];
        if counts.iter().any(|&n| n < Self::MIN_NODES) {
            return Err(Error::Config(alloc::format!(
                "node counts {counts:?} must all be at least {}",
                Self::MIN_NODES
            )));
        }
        if !(self.tolerance > 0.0) {
            return Err(Error::Config(alloc::format!(
                "tolerance {} must be positive",
                self.tolerance
            )));
        }
        Ok(())
    }

    pub fn doubled(&self) -> Self {
        Self {
            radial: 2 * self.radial,
            polar: 2 * self.polar,
            azimuthal: 2 * self.azimuthal,
            ..*self
        }
    }

    pub fn points(&self) -> usize {
        self.radial * self.polar * self.azimuthal
    }
}

/// A grid node in both charts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BallPoint {
    pub radius: Radius,
    pub theta: f64,
    pub sin_theta: f64,
    pub phi: f64,
    pub cartesian: [f64; 3],
}

impl BallPoint {
    pub fn r(&self) -> f64 {
        self.radius.value()
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct AngularNode {
    pub value: f64,
    pub sin: f64,
    pub cos: f64,
    pub weight: f64,
}

/// Expanded one-dimensional rules of a [`QuadratureSpec`].
#[derive(Debug, Clone)]
pub(crate) struct Grid {
    pub radial: Vec<(Radius, f64)>,
    pub polar: Vec<AngularNode>,
    pub azimuthal: Vec<AngularNode>,
}

fn smoothstep5(s: f64) -> f64 {
    s * s * s * (10.0 + s * (-15.0 + 6.0 * s))
}

impl Grid {
    pub fn new(spec: &QuadratureSpec) -> Self {
        let gl = GaussLegendre::new(spec.radial);
        let radial = gl
            .unit_interval()
            .map(|(s, w)| match spec.radial_map {
                RadialMap::Linear => (Radius::new(s), w),
                RadialMap::Sine => {
                    let psi = FRAC_PI_2 * s;
                    let chi = FRAC_PI_2 * (1.0 - s);
                    let h = libm::sin(0.5 * chi);
                    let r = Radius::with_complement(libm::sin(psi), 2.0 * h * h);
                    (r, w * FRAC_PI_2 * libm::sin(chi))
                }
                RadialMap::GradedSine => {
                    // Evaluate the grading where it is small and take the
                    // other side as its complement, so ψ + χ = π/2 closely.
                    let (g, gc) = if s <= 0.5 {
                        let g = smoothstep5(s);
                        (g, 1.0 - g)
                    } else {
                        let gc = smoothstep5(1.0 - s);
                        (1.0 - gc, gc)
                    };
                    let psi = FRAC_PI_2 * g;
                    let chi = FRAC_PI_2 * gc;
                    let h = libm::sin(0.5 * chi);
                    let r = Radius::with_complement(libm::sin(psi), 2.0 * h * h);
                    let u = s * (1.0 - s);
                    (r, w * FRAC_PI_2 * 30.0 * u * u * libm::sin(chi))
                }
            })
            .collect();
        let polar = GaussLegendre::new(spec.polar)
            .unit_interval()
            .map(|(s, w)| angular(PI * s, PI * w))
            .collect();
        let azimuthal = match spec.azimuthal_rule {
            AzimuthalRule::Trapezoid => {
                let n = spec.azimuthal;
                (0..n)
                    .map(|j| angular(TAU * j as f64 / n as f64, TAU / n as f64))
                    .collect()
            }
            AzimuthalRule::GaussLegendre => GaussLegendre::new(spec.azimuthal)
                .unit_interval()
                .map(|(s, w)| angular(TAU * s, TAU * w))
                .collect(),
        };
        Self {
            radial,
            polar,
            azimuthal,
        }
    }

    pub fn point(radius: Radius, polar: &AngularNode, azimuthal: &AngularNode) -> BallPoint {
        let r = radius.value();
        BallPoint {
            radius,
            theta: polar.value,
            sin_theta: polar.sin,
            phi: azimuthal.value,
            cartesian: [
                r * polar.cos,
                r * polar.sin * azimuthal.cos,
                r * polar.sin * azimuthal.sin,
            ],
        }
    }
}

fn angular(value: f64, weight: f64) -> AngularNode {
    let (sin, cos) = libm::sincos(value);
    AngularNode {
        value,
        sin,
        cos,
        weight,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_small_rules() {
        let g = GaussLegendre::new(2);
        let x = 1.0 / libm::sqrt(3.0);
        assert!((g.nodes()[0] + x).abs() < 1e-15 && (g.nodes()[1] - x).abs() < 1e-15);
        assert!((g.weights()[0] - 1.0).abs() < 1e-15);
        let g = GaussLegendre::new(3);
        assert_eq!(g.nodes()[1], 0.0);
        assert!((g.weights()[1] - 8.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn gauss_legendre_exactness() {
        for n in [8, 33, 96, 384] {
            let g = GaussLegendre::new(n);
            assert!((g.weights().iter().sum::<f64>() - 2.0).abs() < 1e-13, "{n}");
            // ∫ x^(2n−2) over [−1, 1]
            let m = 2 * n - 2;
            let q: f64 = g
                .nodes()
                .iter()
                .zip(g.weights())
                .map(|(&x, &w)| w * libm::pow(x, m as f64))
                .sum();
            assert!((q - 2.0 / (m as f64 + 1.0)).abs() < 1e-13, "{n}");
        }
    }

    #[test]
    fn radial_maps_integrate_r_squared() {
        for map in [RadialMap::Linear, RadialMap::Sine, RadialMap::GradedSine] {
            let spec = QuadratureSpec {
                radial_map: map,
                ..QuadratureSpec::default()
            };
            let grid = Grid::new(&spec);
            let v: f64 = grid
                .radial
                .iter()
                .map(|(r, w)| w * r.value() * r.value())
                .sum();
            assert!((v - 1.0 / 3.0).abs() < 1e-13, "{map:?}");
            for (r, _) in &grid.radial {
                let err = (r.value() + r.complement() - 1.0).abs();
                assert!(
                    err < 8.0 * f64::EPSILON,
                    "{map:?} r={} err={err:e}",
                    r.value()
                );
            }
        }
    }

    #[test]
    fn spec_validation() {
        assert!(QuadratureSpec::default().validate().is_ok());
        assert!(QuadratureSpec::with_nodes(4, 64, 64).validate().is_err());
        let bad = QuadratureSpec {
            tolerance: 0.0,
            ..QuadratureSpec::default()
        };
        assert!(bad.validate().is_err());
        assert_eq!(
            QuadratureSpec::default().doubled().points(),
            8 * 96 * 64 * 64
        );
    }
}
