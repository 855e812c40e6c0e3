//! Deterministic integration over the Bloch ball.
//!
//! The grid is a tensor product in the spherical chart: Gauss–Legendre in a
//! graded radial variable, Gauss–Legendre in `θ` and the trapezoid rule in
//! `φ` by default. Every result is checked against the same quantity on the
//! doubled grid (and, if that disagrees, the quadrupled one); the finer value
//! is returned. Shells are summed independently with compensated summation
//! and combined in index order, so results do not depend on the executor.

mod density;
mod rules;

use alloc::vec::Vec;
use core::f64::consts::{E, PI};

use crate::error::{domain, Error, Result};
use crate::exec::{Executor, Sequential};
use crate::linalg::CompensatedSum;
use crate::metric::Radius;

pub use density::{BallDensity, DensitySource, LnDensityFn};
pub use rules::{AzimuthalRule, BallPoint, GaussLegendre, QuadratureSpec, RadialMap};

use rules::Grid;

/// Doublings tried before giving up with [`Error::Accuracy`].
const MAX_DOUBLINGS: usize = 2;

/// An integrator bound to a grid specification and an executor.
#[derive(Debug, Clone)]
pub struct Quadrature<X = Sequential> {
    spec: QuadratureSpec,
    exec: X,
}

impl Quadrature<Sequential> {
    pub fn sequential(spec: QuadratureSpec) -> Result<Self> {
        Self::new(spec, Sequential)
    }
}

impl<X: Executor> Quadrature<X> {
    pub fn new(spec: QuadratureSpec, exec: X) -> Result<Self> {
        spec.validate()?;
        Ok(Self { spec, exec })
    }

    pub fn spec(&self) -> &QuadratureSpec {
        &self.spec
    }

    pub fn executor(&self) -> &X {
        &self.exec
    }

    /// Weighted sums of `K` node values over one grid. `shell` computes a
    /// per-radius cache shared by the nodes of that shell.
    fn accumulate<const K: usize, S, FS, FN>(
        &self,
        spec: &QuadratureSpec,
        shell: FS,
        node: FN,
    ) -> [f64; K]
    where
        FS: Fn(Radius) -> S + Sync + Send,
        FN: Fn(&S, &BallPoint) -> [f64; K] + Sync + Send,
    {
        let grid = Grid::new(spec);
        let per_shell = self.exec.map_indexed(grid.radial.len(), |i| {
            let (radius, w_r) = grid.radial[i];
            let cache = shell(radius);
            let mut acc = [CompensatedSum::new(); K];
            for pt in &grid.polar {
                for az in &grid.azimuthal {
                    let p = Grid::point(radius, pt, az);
                    let w = pt.weight * az.weight;
                    let v = node(&cache, &p);
                    for (a, x) in acc.iter_mut().zip(v) {
                        a.add(w * x);
                    }
                }
            }
            acc.map(|a| w_r * a.value())
        });
        let mut total = [CompensatedSum::new(); K];
        for shell in per_shell {
            for (t, x) in total.iter_mut().zip(shell) {
                t.add(x);
            }
        }
        total.map(|t| t.value())
    }

    /// Evaluates `f` on the base grid and its doublings until two successive
    /// values agree to `tolerance · scale(value)`.
    fn settle<F, G>(&self, f: F, scale: G) -> Result<f64>
    where
        F: Fn(&QuadratureSpec) -> Result<f64>,
        G: Fn(f64) -> f64,
    {
        let tolerance = self.spec.tolerance;
        let mut spec = self.spec;
        let mut coarse = f(&spec)?;
        for _ in 0..MAX_DOUBLINGS {
            spec = spec.doubled();
            let fine = f(&spec)?;
            if (fine - coarse).abs() <= tolerance * scale(fine) {
                return Ok(fine);
            }
            if spec.radial >= self.spec.radial << MAX_DOUBLINGS {
                return Err(Error::Accuracy {
                    coarse,
                    fine,
                    tolerance,
                });
            }
            coarse = fine;
        }
        unreachable!("loop returns on its last doubling")
    }

    /// `∫ f dr dθ dφ` on one grid, without the doubling check.
    pub fn estimate<F>(&self, spec: &QuadratureSpec, f: F) -> f64
    where
        F: Fn(&BallPoint) -> f64 + Sync + Send,
    {
        self.accumulate(spec, |_| (), |_, p| [f(p)])[0]
    }

    /// `∫ f dr dθ dφ` over the ball, where `f` already contains the
    /// `r² sin θ` Jacobian. Converged to `tolerance · max(1, |I|)`.
    pub fn integrate<F>(&self, f: F) -> Result<f64>
    where
        F: Fn(&BallPoint) -> f64 + Sync + Send,
    {
        self.settle(|spec| Ok(self.estimate(spec, &f)), |v| v.abs().max(1.0))
    }

    fn ln_mass_on(&self, spec: &QuadratureSpec, source: &DensitySource) -> Result<f64> {
        let m = self.accumulate(
            spec,
            |r| source.ln_radial(r),
            |lr, p| [libm::exp(lr + source.ln_rest(p))],
        )[0];
        if m > 0.0 && m.is_finite() {
            Ok(libm::log(m))
        } else {
            Err(Error::Mass(m))
        }
    }

    /// Total mass of an unnormalised density, converged in relative terms.
    pub fn mass(&self, source: &DensitySource) -> Result<f64> {
        self.settle(|spec| self.ln_mass_on(spec, source), |_| 1.0)
            .map(libm::exp)
    }

    pub fn normalize(&self, source: DensitySource) -> Result<BallDensity> {
        let ln_mass = self.settle(|spec| self.ln_mass_on(spec, &source), |_| 1.0)?;
        let label = source.label();
        Ok(BallDensity {
            source,
            ln_mass,
            label,
        })
    }

    /// `D(p‖q)` on one grid. Both masses are recomputed on that grid so the
    /// three integrals share their discretisation error.
    pub fn relative_entropy_on(
        &self,
        spec: &QuadratureSpec,
        p: &BallDensity,
        q: &BallDensity,
    ) -> f64 {
        let (ps, qs) = (p.source(), q.source());
        let [zp, zq, cross] = self.accumulate(
            spec,
            |r| (ps.ln_radial(r), qs.ln_radial(r)),
            |&(pr, qr), pt| {
                let lp = pr + ps.ln_rest(pt);
                let lq = qr + qs.ln_rest(pt);
                let dp = libm::exp(lp);
                let dq = libm::exp(lq);
                let term = if dp > 0.0 { dp * (lp - lq) } else { 0.0 };
                [dp, dq, term]
            },
        );
        cross / zp - libm::log(zp) + libm::log(zq)
    }

    /// Relative entropy `∫ p ln(p/q)`, converged to `tolerance · max(1, D)`.
    pub fn relative_entropy(&self, p: &BallDensity, q: &BallDensity) -> Result<f64> {
        self.settle(
            |spec| Ok(self.relative_entropy_on(spec, p, q)),
            |v| v.abs().max(1.0),
        )
    }

    /// Marginal density of `r`, `∫∫ p dθ dφ`, at each radius in `[0, 1)`.
    pub fn radial_marginal(&self, p: &BallDensity, radii: &[f64]) -> Result<Vec<(f64, f64)>> {
        if let Some(&bad) = radii.iter().find(|r| !(**r >= 0.0 && **r < 1.0)) {
            return Err(domain("r", bad, "[0, 1)"));
        }
        let grid = Grid::new(&self.spec);
        Ok(self.exec.map_indexed(radii.len(), |i| {
            let r = radii[i];
            (r, marginal_at(&grid, p, Radius::new(r)))
        }))
    }

    /// Location of the maximum of the radial marginal inside `[lo, hi]`,
    /// by golden-section search to `1e-10` in `r`. Assumes a single
    /// interior maximum in the bracket.
    pub fn radial_marginal_mode(&self, p: &BallDensity, lo: f64, hi: f64) -> Result<f64> {
        if !(0.0 <= lo && lo < hi && hi < 1.0) {
            return Err(domain("bracket", hi - lo, "0 <= lo < hi < 1"));
        }
        let grid = Grid::new(&self.spec);
        let m = |r: f64| marginal_at(&grid, p, Radius::new(r));
        let inv_phi = 0.5 * (libm::sqrt(5.0) - 1.0);
        let (mut a, mut b) = (lo, hi);
        let mut c = b - inv_phi * (b - a);
        let mut d = a + inv_phi * (b - a);
        let (mut fc, mut fd) = (m(c), m(d));
        while b - a > 1e-10 {
            if fc > fd {
                b = d;
                d = c;
                fd = fc;
                c = b - inv_phi * (b - a);
                fc = m(c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + inv_phi * (b - a);
                fd = m(d);
            }
        }
        Ok(0.5 * (a + b))
    }
}

fn marginal_at(grid: &Grid, p: &BallDensity, radius: Radius) -> f64 {
    let src = p.source();
    let mut acc = CompensatedSum::new();
    for pt in &grid.polar {
        for az in &grid.azimuthal {
            let point = Grid::point(radius, pt, az);
            acc.add(pt.weight * az.weight * libm::exp(src.ln_rest(&point)));
        }
    }
    acc.value() * libm::exp(src.ln_radial(radius) - p.ln_mass())
}

/// The `n`-free term `−(d/2) ln(2πe) + ln V` of the asymptotic minimax
/// redundancy `(d/2) ln n − (d/2) ln(2πe) + ln V` of a `d`-parameter family
/// with Fisher-information volume `V`.
pub fn redundancy_constant(dimension: u32, fisher_volume: f64) -> Result<f64> {
    if dimension == 0 {
        return Err(domain("d", 0.0, "d >= 1"));
    }
    if !(fisher_volume > 0.0 && fisher_volume.is_finite()) {
        return Err(domain("volume", fisher_volume, "(0, ∞)"));
    }
    Ok(-0.5 * f64::from(dimension) * libm::log(2.0 * PI * E) + libm::log(fisher_volume))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::MetricModel;

    fn quad() -> Quadrature {
        Quadrature::sequential(QuadratureSpec::with_nodes(48, 32, 32)).unwrap()
    }

    #[test]
    fn ball_volume() {
        let v = quad().integrate(|p| p.r() * p.r() * p.sin_theta).unwrap();
        assert!((v - 4.0 * PI / 3.0).abs() < 1e-12);
    }

    #[test]
    fn bures_volume_is_pi_squared() {
        let m = quad()
            .mass(&DensitySource::Volume(MetricModel::BURES))
            .unwrap();
        assert!((m - PI * PI).abs() < 1e-9);
    }

    #[test]
    fn self_divergence_vanishes() {
        let q = quad();
        let p = q
            .normalize(DensitySource::Volume(MetricModel::BURES))
            .unwrap();
        assert!(q.relative_entropy(&p, &p).unwrap().abs() < 1e-14);
    }

    #[test]
    fn accuracy_error_carries_estimates() {
        // A wildly oscillating integrand cannot settle.
        let spec = QuadratureSpec {
            tolerance: 1e-15,
            ..QuadratureSpec::with_nodes(8, 8, 8)
        };
        let q = Quadrature::sequential(spec).unwrap();
        let err = q
            .integrate(|p| libm::sin(400.0 * p.r()) * p.sin_theta)
            .unwrap_err();
        assert!(matches!(err, Error::Accuracy { .. }));
    }

    #[test]
    fn zero_mass_is_an_error() {
        let src = DensitySource::custom("zero", |_| f64::NEG_INFINITY);
        assert!(matches!(quad().normalize(src), Err(Error::Mass(_))));
    }

    #[test]
    fn bures_marginal_is_analytic() {
        let q = quad();
        let p = q
            .normalize(DensitySource::Volume(MetricModel::BURES))
            .unwrap();
        for (r, m) in q.radial_marginal(&p, &[0.1, 0.5, 0.9]).unwrap() {
            let want = 4.0 / PI * r * r / libm::sqrt(1.0 - r * r);
            assert!((m - want).abs() < 1e-10 * want);
        }
    }

    #[test]
    fn redundancy_inversion() {
        let v = libm::exp(1.5 * libm::log(2.0 * PI * E));
        assert!(redundancy_constant(3, v).unwrap().abs() < 1e-14);
        assert!(redundancy_constant(0, 1.0).is_err());
        assert!(redundancy_constant(3, 0.0).is_err());
    }
}
