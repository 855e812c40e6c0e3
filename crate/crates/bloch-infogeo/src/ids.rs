//! Names of priors and posteriors on the command line.
//!
//! ```text
//! BH | B | MC | GKS | MBH                    prior
//! <prior>:posterior:<likelihood>             posterior
//! likelihood = oct3 | oct6 | oct9 | cube4 | icos6 | dode10 | <axes>:<k>
//! ```
//!
//! `oct6` and `oct9` are two and three pairs per coordinate axis; `<axes>:<k>`
//! is `k` pairs per axis of any Platonic set (`oct`, `cube`, `icos`, `dode`).

use std::fmt;
use std::str::FromStr;

use bloch_infogeo_core::bayes::{self, AxisSet, LikelihoodSpec, Platonic, PriorId};
use bloch_infogeo_core::quadrature::{BallDensity, Quadrature};
use bloch_infogeo_core::{Error, Executor};

use crate::error::{CliError, Result};

/// Parses a likelihood name.
pub fn parse_likelihood(s: &str) -> Result<LikelihoodSpec> {
    let s = s.trim();
    let unknown = || CliError::Usage(format!("unknown likelihood `{s}`"));
    if let Some((axes, k)) = s.split_once(':') {
        let axes: AxisSet = axes.parse().map_err(|_| unknown())?;
        let k: u32 = k.trim().parse().map_err(|_| unknown())?;
        return Ok(LikelihoodSpec::new(axes, k)?);
    }
    let lower = s.to_ascii_lowercase();
    let spec = match lower.as_str() {
        "oct6" => LikelihoodSpec::orthogonal(2)?,
        "oct9" => LikelihoodSpec::orthogonal(3)?,
        _ => LikelihoodSpec::platonic(lower.parse::<Platonic>().map_err(|_| unknown())?),
    };
    Ok(spec)
}

/// Short name of a likelihood, inverse of [`parse_likelihood`].
pub fn likelihood_name(l: &LikelihoodSpec) -> String {
    let solid: Option<Platonic> = l.axes().label().parse().ok();
    let k = l.pairs_per_axis();
    match solid {
        Some(Platonic::Octahedron) if k <= 3 => format!("oct{}", 3 * k),
        Some(p) if k == 1 => format!(
            "{}{}",
            match p {
                Platonic::Octahedron => "oct",
                Platonic::Cube => "cube",
                Platonic::Icosahedron => "icos",
                Platonic::Dodecahedron => "dode",
            },
            p.axis_count()
        ),
        _ => format!("{}:{k}", l.axes().label().to_ascii_lowercase()),
    }
}

/// A prior, optionally updated by one likelihood.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityId {
    pub prior: PriorId,
    pub likelihood: Option<LikelihoodSpec>,
}

impl DensityId {
    pub fn prior(prior: PriorId) -> Self {
        Self {
            prior,
            likelihood: None,
        }
    }

    pub fn posterior(prior: PriorId, likelihood: LikelihoodSpec) -> Self {
        Self {
            prior,
            likelihood: Some(likelihood),
        }
    }

    /// Replaces the likelihood; fails if one is already present.
    pub fn updated(self, likelihood: LikelihoodSpec) -> Result<Self> {
        if self.likelihood.is_some() {
            return Err(CliError::Usage(format!("`{self}` is already a posterior")));
        }
        Ok(Self::posterior(self.prior, likelihood))
    }

    /// Normalises the density on `quad`'s grid.
    pub fn build<X: Executor>(&self, quad: &Quadrature<X>) -> Result<BallDensity> {
        let p = bayes::prior(quad, self.prior)?;
        let d = match &self.likelihood {
            None => p,
            Some(l) => bayes::posterior(quad, &p, l)?,
        };
        Ok(d.with_label(self.to_string()))
    }
}

impl fmt::Display for DensityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.likelihood {
            None => write!(f, "{}", self.prior),
            Some(l) => write!(f, "{}:posterior:{}", self.prior, likelihood_name(l)),
        }
    }
}

impl FromStr for DensityId {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let unknown = |e: Error| CliError::Usage(format!("unknown density `{s}`: {e}"));
        match s.split_once(':') {
            None => Ok(Self::prior(s.parse().map_err(unknown)?)),
            Some((prior, rest)) => {
                let prior: PriorId = prior.parse().map_err(unknown)?;
                let lik = rest
                    .split_once(':')
                    .filter(|(kw, _)| kw.eq_ignore_ascii_case("posterior"))
                    .map(|(_, l)| l)
                    .ok_or_else(|| {
                        CliError::Usage(format!(
                            "unknown density `{s}`: expected <prior>:posterior:<likelihood>"
                        ))
                    })?;
                Ok(Self::posterior(prior, parse_likelihood(lik)?))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        for s in [
            "BH",
            "MBH",
            "B:posterior:oct3",
            "MC:posterior:oct6",
            "BH:posterior:oct9",
            "B:posterior:cube4",
            "B:posterior:icos6",
            "B:posterior:dode10",
            "GKS:posterior:cube-4:2",
            "B:posterior:oct:5",
        ] {
            let id: DensityId = s.parse().unwrap();
            assert_eq!(id.to_string().parse::<DensityId>().unwrap(), id, "{s}");
        }
        let id: DensityId = "bh:POSTERIOR:Oct:2".parse().unwrap();
        assert_eq!(id.to_string(), "BH:posterior:oct6");
        assert_eq!(id.likelihood.unwrap().pairs(), 6);
    }

    #[test]
    fn rejects_unknown() {
        for s in [
            "XYZ",
            "BH:prior:oct3",
            "BH:posterior:tetra",
            "BH:posterior:oct:0",
            "BH:posterior:oct:x",
        ] {
            assert!(s.parse::<DensityId>().is_err(), "{s}");
        }
    }
}
