//! Operator monotone functions indexing the monotone metrics.
//!
//! A symmetric operator monotone `f` (`f(t) = t f(1/t)`) fixes the normal
//! coefficient `1 / ((1 + r) f((1 − r)/(1 + r)))` of a monotone metric. Every
//! function here is evaluated through the radius `r = (1 − t)/(1 + t)` so
//! that `t → 0` (pure states) and `t → 1` (the maximally mixed state) are
//! both handled without cancellation.

use core::fmt;
use core::str::FromStr;

use alloc::string::ToString;

use super::{bh_normal, Radius};
use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MonotoneFn {
    /// `(1 + t)/2`, the minimal monotone (Bures) metric.
    Bures,
    /// `2t/(1 + t)`, the maximal monotone metric.
    Maximal,
    /// `e⁻¹ t^{t/(t−1)}`, the identric (exponential) mean.
    Identric,
    /// `2(1 − t)² / ((1 + t) ln²t)`.
    MorozovaChentsov,
    /// The function whose monotone normal coefficient equals the
    /// Brody–Hughston one. Takes the value 12 at `t = 1`.
    ImputedBh,
}

impl MonotoneFn {
    pub const ALL: [MonotoneFn; 5] = [
        MonotoneFn::Bures,
        MonotoneFn::Maximal,
        MonotoneFn::Identric,
        MonotoneFn::MorozovaChentsov,
        MonotoneFn::ImputedBh,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            MonotoneFn::Bures => "BURES",
            MonotoneFn::Maximal => "MAXIMAL",
            MonotoneFn::Identric => "IDENTRIC",
            MonotoneFn::MorozovaChentsov => "MC",
            MonotoneFn::ImputedBh => "IMPUTED_BH",
        }
    }

    /// `f(t)` for `t >= 0`; `t = 0` and `t = 1` return the limits. Values
    /// above 1 use `f(t) = t f(1/t)`. Negative or NaN input gives NaN.
    pub fn eval(&self, t: f64) -> f64 {
        if !(t >= 0.0) {
            return f64::NAN;
        }
        if t > 1.0 {
            return t * self.eval(1.0 / t);
        }
        libm::exp(self.ln_at(Radius::from_ratio(t)))
    }

    /// `ln f((1 − r)/(1 + r))`.
    pub(crate) fn ln_at(&self, r: Radius) -> f64 {
        let x = r.value();
        match self {
            MonotoneFn::Bures => -libm::log1p(x),
            MonotoneFn::Maximal => libm::log(r.complement()),
            MonotoneFn::Identric => {
                // t ln t / (t − 1) = (1 − r) atanh(r) / r
                if r.complement() == 0.0 {
                    return -1.0;
                }
                let ratio = if x == 0.0 { 1.0 } else { r.atanh() / x };
                -1.0 + r.complement() * ratio
            }
            MonotoneFn::MorozovaChentsov => {
                // f = r² / ((1 + r) atanh² r)
                let ln_ratio = if x == 0.0 {
                    0.0
                } else {
                    libm::log(x / r.atanh())
                };
                2.0 * ln_ratio - libm::log1p(x)
            }
            MonotoneFn::ImputedBh => -libm::log1p(x) - libm::log(bh_normal(x)),
        }
    }
}

impl fmt::Display for MonotoneFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MonotoneFn {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let hit = |names: &[&str]| names.iter().any(|n| n.eq_ignore_ascii_case(s));
        if hit(&["BURES", "B", "MINIMAL", "SLD"]) {
            Ok(MonotoneFn::Bures)
        } else if hit(&["MAXIMAL", "MAX", "RLD"]) {
            Ok(MonotoneFn::Maximal)
        } else if hit(&["IDENTRIC", "GKS", "EXPONENTIAL"]) {
            Ok(MonotoneFn::Identric)
        } else if hit(&["MC", "MOROZOVA_CHENTSOV", "MOROZOVA-CHENTSOV"]) {
            Ok(MonotoneFn::MorozovaChentsov)
        } else if hit(&["IMPUTED_BH", "IMPUTED"]) {
            Ok(MonotoneFn::ImputedBh)
        } else {
            Err(Error::UnknownId(s.to_string()))
        }
    }
}

/// The function imputed to the Brody–Hughston normal coefficient,
/// `−(t − 1)² / (2(1 + t) + (t − 1) coth((1 − t)/(2 + 2t)))`, with its limits
/// at `t = 0` and `t = 1`.
pub fn imputed_f(t: f64) -> f64 {
    MonotoneFn::ImputedBh.eval(t)
}

/// First-order expansion of [`imputed_f`] about `t = 0`:
/// `(−3 + 4e − e² + (7 − 16e + 5e²) t) / (e − 3)²`.
pub fn imputed_f_series(t: f64) -> f64 {
    let (a, b) = imputed_f_series_coefficients();
    a + b * t
}

/// Intercept and slope of [`imputed_f_series`].
pub fn imputed_f_series_coefficients() -> (f64, f64) {
    use core::f64::consts::E;
    let d = (E - 3.0) * (E - 3.0);
    (
        (-3.0 + 4.0 * E - E * E) / d,
        (7.0 - 16.0 * E + 5.0 * E * E) / d,
    )
}
