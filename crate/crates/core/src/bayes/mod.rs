//! Priors from metric volume elements, spin-measurement posteriors and the
//! comparative-noninformativity protocol.
//!
//! A prior `p` is judged more noninformative than `q` when updating `p`
//! with a small amount of data moves it towards `q`, while updating `q`
//! with the same data moves it away from `p`.

mod axes;

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

pub use axes::{AxisSet, LikelihoodSpec, Platonic};

use crate::error::{Error, Result};
use crate::exec::Executor;
use crate::metric::{MetricModel, MonotoneFn};
use crate::quadrature::{BallDensity, DensitySource, Quadrature};

/// The reference priors, each the normalised volume element of a metric.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum PriorId {
    /// Brody–Hughston.
    Bh,
    /// Bures (minimal monotone).
    B,
    /// Morozova–Chentsov.
    Mc,
    /// Identric ("GKS") monotone metric.
    Gks,
    /// Modified Brody–Hughston.
    Mbh,
}

impl PriorId {
    pub const ALL: [PriorId; 5] = [
        PriorId::Bh,
        PriorId::B,
        PriorId::Mc,
        PriorId::Gks,
        PriorId::Mbh,
    ];

    pub fn metric(&self) -> MetricModel {
        match self {
            PriorId::Bh => MetricModel::BrodyHughston,
            PriorId::B => MetricModel::Monotone(MonotoneFn::Bures),
            PriorId::Mc => MetricModel::Monotone(MonotoneFn::MorozovaChentsov),
            PriorId::Gks => MetricModel::Monotone(MonotoneFn::Identric),
            PriorId::Mbh => MetricModel::ModifiedBh,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            PriorId::Bh => "BH",
            PriorId::B => "B",
            PriorId::Mc => "MC",
            PriorId::Gks => "GKS",
            PriorId::Mbh => "MBH",
        }
    }
}

impl fmt::Display for PriorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PriorId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        PriorId::ALL
            .into_iter()
            .find(|p| p.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownId(s.to_string()))
    }
}

/// The normalised volume element of `id`'s metric, labelled `p_<id>`.
pub fn prior<X: Executor>(quad: &Quadrature<X>, id: PriorId) -> Result<BallDensity> {
    quad.normalize(DensitySource::Volume(id.metric()))
        .map(|d| d.with_label(alloc::format!("p_{id}")))
}

/// `p × likelihood`, normalised.
pub fn posterior<X: Executor>(
    quad: &Quadrature<X>,
    p: &BallDensity,
    likelihood: &LikelihoodSpec,
) -> Result<BallDensity> {
    let label = alloc::format!("P[{}]({})", likelihood.pairs(), p.label());
    quad.normalize(p.source().clone().posterior(likelihood.clone()))
        .map(|d| d.with_label(label))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Verdict {
    FirstMoreNoninformative,
    SecondMoreNoninformative,
    Inconclusive,
}

/// Divergences after one amount of data.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ClarkeRung {
    pub likelihood: String,
    pub pairs: usize,
    /// `D(P_first ‖ second)`.
    pub first_updated: f64,
    /// `D(P_second ‖ first)`.
    pub second_updated: f64,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ClarkeReport {
    pub first: String,
    pub second: String,
    /// `D(first ‖ second)`.
    pub forward: f64,
    /// `D(second ‖ first)`.
    pub backward: f64,
    pub rungs: Vec<ClarkeRung>,
    /// Decided on the first rung.
    pub verdict: Verdict,
    /// Index of the first rung at which the favoured prior's posterior is
    /// no longer closer to the other prior than the prior itself was.
    pub breakdown: Option<usize>,
}

/// Runs the comparison over a ladder of increasingly informative
/// likelihoods.
pub fn clarke_compare<X: Executor>(
    quad: &Quadrature<X>,
    first: &BallDensity,
    second: &BallDensity,
    ladder: &[LikelihoodSpec],
) -> Result<ClarkeReport> {
    let forward = quad.relative_entropy(first, second)?;
    let backward = quad.relative_entropy(second, first)?;
    let mut rungs = Vec::with_capacity(ladder.len());
    for l in ladder {
        let pf = posterior(quad, first, l)?;
        let ps = posterior(quad, second, l)?;
        rungs.push(ClarkeRung {
            likelihood: l.to_string(),
            pairs: l.pairs(),
            first_updated: quad.relative_entropy(&pf, second)?,
            second_updated: quad.relative_entropy(&ps, first)?,
        });
    }
    let verdict = match rungs.first() {
        Some(r) if r.first_updated < forward && r.second_updated > backward => {
            Verdict::FirstMoreNoninformative
        }
        Some(r) if r.second_updated < backward && r.first_updated > forward => {
            Verdict::SecondMoreNoninformative
        }
        _ => Verdict::Inconclusive,
    };
    let breakdown = match verdict {
        Verdict::FirstMoreNoninformative => rungs.iter().position(|r| r.first_updated >= forward),
        Verdict::SecondMoreNoninformative => {
            rungs.iter().position(|r| r.second_updated >= backward)
        }
        Verdict::Inconclusive => None,
    };
    Ok(ClarkeReport {
        first: first.label().to_string(),
        second: second.label().to_string(),
        forward,
        backward,
        rungs,
        verdict,
        breakdown,
    })
}
