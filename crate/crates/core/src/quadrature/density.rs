//! Unnormalised and normalised densities on the ball.
//!
//! Densities are taken with respect to `dr dθ dφ`, so a volume-element prior
//! carries its `r² sin θ` factor. They are handled as logarithms split into a
//! part depending on the radius alone and a remainder, which lets the
//! integrator evaluate the radial part once per shell.

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use core::fmt;

use super::BallPoint;
use crate::bayes::LikelihoodSpec;
use crate::metric::{MetricModel, Radius};

pub type LnDensityFn = dyn Fn(&BallPoint) -> f64 + Send + Sync;

#[derive(Clone)]
pub enum DensitySource {
    /// The Riemannian volume element `√radial · normal · r² sin θ`.
    Volume(MetricModel),
    /// A user-supplied log-density.
    Custom {
        label: String,
        ln_density: Arc<LnDensityFn>,
    },
    /// `base × likelihood`.
    Posterior {
        base: Box<DensitySource>,
        likelihood: LikelihoodSpec,
    },
}

impl DensitySource {
    pub fn custom<F>(label: impl Into<String>, ln_density: F) -> Self
    where
        F: Fn(&BallPoint) -> f64 + Send + Sync + 'static,
    {
        DensitySource::Custom {
            label: label.into(),
            ln_density: Arc::new(ln_density),
        }
    }

    pub fn posterior(self, likelihood: LikelihoodSpec) -> Self {
        DensitySource::Posterior {
            base: Box::new(self),
            likelihood,
        }
    }

    /// Part of the log-density that depends on `r` only.
    pub fn ln_radial(&self, r: Radius) -> f64 {
        match self {
            DensitySource::Volume(m) => m.ln_volume_density(r),
            DensitySource::Custom { .. } => 0.0,
            DensitySource::Posterior { base, .. } => base.ln_radial(r),
        }
    }

    /// The rest: `ln_density(p) = ln_radial(p.radius) + ln_rest(p)`.
    pub fn ln_rest(&self, p: &BallPoint) -> f64 {
        match self {
            DensitySource::Volume(_) => libm::log(p.sin_theta),
            DensitySource::Custom { ln_density, .. } => ln_density(p),
            DensitySource::Posterior { base, likelihood } => {
                base.ln_rest(p) + likelihood.ln_factor(&p.cartesian)
            }
        }
    }

    pub fn ln_density(&self, p: &BallPoint) -> f64 {
        self.ln_radial(p.radius) + self.ln_rest(p)
    }

    /// `true` when the density depends on the polar angle only through
    /// `sin θ` and not at all on `φ`.
    pub fn is_isotropic(&self) -> bool {
        matches!(self, DensitySource::Volume(_))
    }

    pub fn label(&self) -> String {
        match self {
            DensitySource::Volume(m) => alloc::format!("volume({m})"),
            DensitySource::Custom { label, .. } => label.clone(),
            DensitySource::Posterior { base, likelihood } => {
                alloc::format!("{} * {}", base.label(), likelihood)
            }
        }
    }
}

impl fmt::Debug for DensitySource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// A density together with the logarithm of its mass, so that
/// `pdf = exp(ln_density − ln_mass)` integrates to one.
#[derive(Clone, Debug)]
pub struct BallDensity {
    pub(crate) source: DensitySource,
    pub(crate) ln_mass: f64,
    pub(crate) label: String,
}

impl BallDensity {
    pub fn source(&self) -> &DensitySource {
        &self.source
    }

    pub fn ln_mass(&self) -> f64 {
        self.ln_mass
    }

    pub fn mass(&self) -> f64 {
        libm::exp(self.ln_mass)
    }

    /// Multiplier that normalises the unnormalised density, `1/mass`.
    pub fn normalizer(&self) -> f64 {
        libm::exp(-self.ln_mass)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl ToString) -> Self {
        self.label = label.to_string();
        self
    }

    pub fn ln_pdf(&self, p: &BallPoint) -> f64 {
        self.source.ln_density(p) - self.ln_mass
    }

    pub fn pdf(&self, p: &BallPoint) -> f64 {
        libm::exp(self.ln_pdf(p))
    }
}
