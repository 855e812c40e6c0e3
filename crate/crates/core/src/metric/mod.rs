//! Riemannian metrics on the Bloch ball.
//!
//! Each model is diagonal in the spherical chart,
//! `ds² = radial(r) dr² + normal(r) dn²` with `dn² = r²(dθ² + sin²θ dφ²)`,
//! so a model reduces to two positive functions of the radius. The Cartesian
//! tensor is `radial · r̂r̂ᵀ + normal · (I − r̂r̂ᵀ)`.

mod dominance;
mod fisher;
mod monotone;

use core::fmt;
use core::str::FromStr;

use alloc::string::ToString;

use crate::error::{domain, Error, Result};
use crate::linalg::{norm, Mat3, Vec3};
use crate::state::Spherical;

pub use dominance::{
    dominance_report, DominancePoint, DominanceReport, Normalization, Sign, SignBand,
};
pub use fisher::{
    fisher_from_generating, generating_function, generating_function_from_eigenvalues,
    ln_generating_function, DEFAULT_HESSIAN_STEP,
};
pub use monotone::{imputed_f, imputed_f_series, imputed_f_series_coefficients, MonotoneFn};

/// Below this radius the Brody–Hughston coefficients are summed from their
/// Bernoulli series, which converges for `r < 2π` and is exact to rounding
/// on the whole ball; the closed forms lose up to `log10(12/r²)` digits to
/// cancellation and are only used beyond it.
pub const SERIES_CUTOFF: f64 = 1.0;

/// `B_{2n} / (2n)!` for `n = 1..=13`.
const BERNOULLI_RATIOS: [f64; 13] = [
    8.333_333_333_333_333e-2,
    -1.388_888_888_888_889e-3,
    3.306_878_306_878_307e-5,
    -8.267_195_767_195_767e-7,
    2.087_675_698_786_81e-8,
    -5.284_190_138_687_493e-10,
    1.338_253_653_068_467_9e-11,
    -3.389_680_296_322_582_9e-13,
    8.586_062_056_277_845e-15,
    -2.174_868_698_558_062e-16,
    5.509_002_828_360_23e-18,
    -1.395_446_468_581_252_3e-19,
    3.534_707_039_629_467e-21,
];

/// `Σ w(n) B_{2n}/(2n)! r^{2n−2}` by Horner's rule.
fn bernoulli_series(r: f64, weight: impl Fn(usize) -> f64) -> f64 {
    let s = r * r;
    BERNOULLI_RATIOS
        .iter()
        .enumerate()
        .rev()
        .fold(0.0, |acc, (i, &c)| acc * s + weight(i + 1) * c)
}

/// A radius together with its complement `1 − r`, which is carried
/// separately so that points very close to the pure states keep their
/// relative accuracy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Radius {
    r: f64,
    complement: f64,
}

impl Radius {
    pub fn new(r: f64) -> Self {
        Self {
            r,
            complement: 1.0 - r,
        }
    }

    /// `r` with an independently computed `1 − r`.
    pub fn with_complement(r: f64, complement: f64) -> Self {
        Self { r, complement }
    }

    /// The radius at which `(1 − r)/(1 + r) = t`, for `t ∈ [0, 1]`.
    pub fn from_ratio(t: f64) -> Self {
        Self {
            r: (1.0 - t) / (1.0 + t),
            complement: 2.0 * t / (1.0 + t),
        }
    }

    pub fn value(&self) -> f64 {
        self.r
    }

    pub fn complement(&self) -> f64 {
        self.complement
    }

    /// `1 − r²`.
    pub fn one_minus_square(&self) -> f64 {
        self.complement * (1.0 + self.r)
    }

    /// `atanh r = ½ ln((1 + r)/(1 − r))`.
    pub fn atanh(&self) -> f64 {
        if self.r < 0.5 {
            libm::atanh(self.r)
        } else {
            0.5 * (libm::log1p(self.r) - libm::log(self.complement))
        }
    }
}

/// Brody–Hughston radial coefficient `(4 − r² csch²(r/2)) / 4r²`.
pub(crate) fn bh_radial(r: f64) -> f64 {
    if r < SERIES_CUTOFF {
        bernoulli_series(r, |n| (2 * n - 1) as f64)
    } else {
        let c = r / libm::sinh(0.5 * r);
        (4.0 - c * c) / (4.0 * r * r)
    }
}

/// Brody–Hughston normal coefficient `(r coth(r/2) − 2) / 2r²`.
pub(crate) fn bh_normal(r: f64) -> f64 {
    if r < SERIES_CUTOFF {
        bernoulli_series(r, |_| 1.0)
    } else {
        (r / libm::tanh(0.5 * r) - 2.0) / (2.0 * r * r)
    }
}

/// The two coefficient functions of a diagonal metric at one radius.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Coefficients {
    /// Coefficient of `dr²`.
    pub radial: f64,
    /// Coefficient of `dn² = r²dθ² + r² sin²θ dφ²`.
    pub normal: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MetricModel {
    /// The Fisher information of the quantum exponential family.
    BrodyHughston,
    /// A monotone (Petz) metric, indexed by its operator monotone function.
    Monotone(MonotoneFn),
    /// Fisher information of the Bach–Guiasu maximum-entropy family.
    BachGuiasu,
    /// Brody–Hughston with its radial part replaced by `1/(12(1 − r²))`.
    ModifiedBh,
}

impl MetricModel {
    pub const REGISTERED: [MetricModel; 8] = [
        MetricModel::BrodyHughston,
        MetricModel::Monotone(MonotoneFn::Bures),
        MetricModel::Monotone(MonotoneFn::Maximal),
        MetricModel::Monotone(MonotoneFn::Identric),
        MetricModel::Monotone(MonotoneFn::MorozovaChentsov),
        MetricModel::Monotone(MonotoneFn::ImputedBh),
        MetricModel::BachGuiasu,
        MetricModel::ModifiedBh,
    ];

    pub const BURES: MetricModel = MetricModel::Monotone(MonotoneFn::Bures);
    pub const MAXIMAL: MetricModel = MetricModel::Monotone(MonotoneFn::Maximal);
    pub const IDENTRIC: MetricModel = MetricModel::Monotone(MonotoneFn::Identric);
    pub const MOROZOVA_CHENTSOV: MetricModel = MetricModel::Monotone(MonotoneFn::MorozovaChentsov);

    /// Coefficients at `r ∈ [0, 1)`; `r = 0` yields the limits.
    pub fn coefficients(&self, r: f64) -> Result<Coefficients> {
        check_open_radius(r)?;
        Ok(self.coefficients_at(Radius::new(r)))
    }

    /// Coefficients without the domain check.
    pub fn coefficients_at(&self, r: Radius) -> Coefficients {
        let x = r.value();
        match self {
            MetricModel::BrodyHughston => Coefficients {
                radial: bh_radial(x),
                normal: bh_normal(x),
            },
            MetricModel::Monotone(f) => Coefficients {
                radial: 1.0 / r.one_minus_square(),
                normal: libm::exp(-libm::log1p(x) - f.ln_at(r)),
            },
            MetricModel::BachGuiasu => {
                let q = r.one_minus_square();
                Coefficients {
                    radial: 2.0 * (1.0 + x * x) / (q * q),
                    normal: 2.0 / q,
                }
            }
            MetricModel::ModifiedBh => Coefficients {
                radial: 1.0 / (12.0 * r.one_minus_square()),
                normal: bh_normal(x),
            },
        }
    }

    /// `(ln radial, ln normal)`, finite up to `r = 1` wherever the
    /// coefficients themselves are finite.
    pub fn ln_coefficients_at(&self, r: Radius) -> (f64, f64) {
        let x = r.value();
        let ln_q = libm::log(r.complement()) + libm::log1p(x);
        match self {
            MetricModel::BrodyHughston => (libm::log(bh_radial(x)), libm::log(bh_normal(x))),
            MetricModel::Monotone(f) => (-ln_q, -libm::log1p(x) - f.ln_at(r)),
            MetricModel::BachGuiasu => (
                core::f64::consts::LN_2 + libm::log1p(x * x) - 2.0 * ln_q,
                core::f64::consts::LN_2 - ln_q,
            ),
            MetricModel::ModifiedBh => (-libm::log(12.0) - ln_q, libm::log(bh_normal(x))),
        }
    }

    /// Logarithm of the radial part of the volume element,
    /// `ln(√radial · normal · r²)`; the full element also carries `sin θ`.
    pub fn ln_volume_density(&self, r: Radius) -> f64 {
        let (a, b) = self.ln_coefficients_at(r);
        0.5 * a + b + 2.0 * libm::log(r.value())
    }

    /// First-order length `√(radial dr² + normal (r² dθ² + r² sin²θ dφ²))`
    /// of a chart displacement, evaluated at `at`.
    pub fn line_element(&self, at: &Spherical, delta: [f64; 3]) -> Result<f64> {
        check_open_radius(at.r)?;
        let c = self.coefficients_at(Radius::new(at.r));
        let st = libm::sin(at.theta);
        let [dr, dt, dp] = delta;
        let angular = at.r * at.r * (dt * dt + st * st * dp * dp);
        Ok(libm::sqrt(c.radial * dr * dr + c.normal * angular))
    }

    /// The metric tensor in Cartesian coordinates at an interior point.
    ///
    /// At the origin the tensor is `radial(0)·I`, which requires
    /// `radial(0) = normal(0)`; models where the two limits differ have no
    /// tensor there and return a domain error.
    pub fn tensor_cartesian(&self, x: Vec3) -> Result<Mat3> {
        let r = norm(&x);
        check_open_radius(r)?;
        let c = self.coefficients_at(Radius::new(r));
        let mut g = [[0.0; 3]; 3];
        if r == 0.0 {
            if (c.radial - c.normal).abs() > 1e-15 * c.radial {
                return Err(domain("r", 0.0, "points where the tensor is continuous"));
            }
            for (i, row) in g.iter_mut().enumerate() {
                row[i] = c.radial;
            }
            return Ok(g);
        }
        let u = [x[0] / r, x[1] / r, x[2] / r];
        let gap = c.radial - c.normal;
        for i in 0..3 {
            for j in i..3 {
                let v = gap * u[i] * u[j];
                g[i][j] = v;
                g[j][i] = v;
            }
            g[i][i] += c.normal;
        }
        Ok(g)
    }

    /// Stable identifier, e.g. `BH`, `MONOTONE:BURES`.
    pub fn id(&self) -> alloc::string::String {
        self.to_string()
    }
}

fn check_open_radius(r: f64) -> Result<()> {
    if (0.0..1.0).contains(&r) {
        Ok(())
    } else {
        Err(domain("r", r, "[0, 1)"))
    }
}

impl fmt::Display for MetricModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MetricModel::BrodyHughston => f.write_str("BH"),
            MetricModel::Monotone(m) => write!(f, "MONOTONE:{m}"),
            MetricModel::BachGuiasu => f.write_str("BACH_GUIASU"),
            MetricModel::ModifiedBh => f.write_str("MODIFIED_BH"),
        }
    }
}

impl FromStr for MetricModel {
    type Err = Error;

    /// Accepts the canonical ids plus the short density names used for
    /// priors (`B`, `MC`, `GKS`, `MBH`, ...), case-insensitively.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let is = |names: &[&str]| names.iter().any(|n| n.eq_ignore_ascii_case(s));
        if is(&["BH", "BRODY_HUGHSTON"]) {
            return Ok(MetricModel::BrodyHughston);
        }
        if is(&["BACH_GUIASU", "BG"]) {
            return Ok(MetricModel::BachGuiasu);
        }
        if is(&["MODIFIED_BH", "MBH"]) {
            return Ok(MetricModel::ModifiedBh);
        }
        let tail = match s.split_once(':') {
            Some((head, tail)) if head.eq_ignore_ascii_case("MONOTONE") => tail,
            _ => s,
        };
        tail.parse::<MonotoneFn>()
            .map(MetricModel::Monotone)
            .map_err(|_| Error::UnknownId(s.to_string()))
    }
}
