//! Random search for channels that increase a metric's line element.
//!
//! A metric is monotone when no CPTP channel increases the distance between
//! nearby states. Each trial samples a state, a small chart displacement and
//! a channel from [`QubitChannel::rsw`], and compares the first-order
//! distances before and after the channel. Trial `i` draws from its own
//! ChaCha8 stream (`seed`, stream `i`), so the records depend only on the
//! seed and the trial count.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::channel::{QubitChannel, PUBLISHED_U, PUBLISHED_V};
use crate::error::{domain, Error, Result};
use crate::exec::Executor;
use crate::metric::MetricModel;
use crate::state::{QubitState, Spherical};

pub const DEFAULT_SCALE: f64 = 1e-5;
pub const DEFAULT_MARGIN: f64 = 1e-6;
const CHUNK: u64 = 1024;

/// Law of the sampled states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum SamplingLaw {
    /// Uniform with respect to Euclidean volume.
    #[default]
    UniformBall,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchConfig {
    pub metric: MetricModel,
    pub trials: u64,
    pub seed: u64,
    /// Half-width of the uniform chart differentials.
    pub scale: f64,
    /// Restrict to channels with `u = 0`.
    pub unital_only: bool,
    /// A trial counts only if `post > pre · (1 + margin)`; this absorbs the
    /// second-order chart error of finite differentials.
    pub margin: f64,
    pub sampling: SamplingLaw,
}

impl SearchConfig {
    pub fn new(metric: MetricModel, trials: u64, seed: u64) -> Self {
        Self {
            metric,
            trials,
            seed,
            scale: DEFAULT_SCALE,
            unital_only: false,
            margin: DEFAULT_MARGIN,
            sampling: SamplingLaw::UniformBall,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Config("trial count must be at least 1".into()));
        }
        if !(self.scale > 0.0 && self.scale <= 1e-3) {
            return Err(domain("scale", self.scale, "(0, 1e-3]"));
        }
        if !(self.margin >= 0.0 && self.margin.is_finite()) {
            return Err(domain("margin", self.margin, "[0, ∞)"));
        }
        Ok(())
    }
}

/// A state, a chart displacement to a second state, and a channel.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CaseSpec {
    pub state: Spherical,
    /// `second − first` in `(r, θ, φ)`.
    pub differential: [f64; 3],
    pub u: f64,
    pub v: f64,
}

impl CaseSpec {
    pub fn second(&self) -> Spherical {
        self.state.offset(self.differential)
    }
}

/// The published counterexample. Its second state is the first minus the
/// listed differentials: that is the sign for which the printed image
/// coordinates are reproduced.
pub fn published_case() -> CaseSpec {
    CaseSpec {
        state: Spherical::new(0.646675, 2.51509, 5.89259),
        differential: [-4.17588e-6, 8.44724e-6, -7.82807e-6],
        u: PUBLISHED_U,
        v: PUBLISHED_V,
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CaseReport {
    pub metric: String,
    pub case: CaseSpec,
    pub first_image: Spherical,
    pub second_image: Spherical,
    /// Distance between the two states.
    pub pre: f64,
    /// Distance between their images.
    pub post: f64,
    /// `post / pre`.
    pub ratio: f64,
}

impl CaseReport {
    /// Whether the channel increased the distance by more than `margin`
    /// (relative).
    pub fn violates(&self, margin: f64) -> bool {
        self.post > self.pre * (1.0 + margin)
    }
}

pub fn evaluate_case(metric: MetricModel, case: &CaseSpec) -> Result<CaseReport> {
    let channel = QubitChannel::rsw(case.u, case.v);
    let first = QubitState::from_spherical(case.state)?;
    let second = QubitState::from_spherical(case.second())?;
    let first_image = channel.apply(&first)?.spherical();
    let second_image = channel.apply(&second)?.spherical();
    let pre = metric.line_element(&case.state, case.differential)?;
    let post = metric.line_element(&first_image, first_image.delta_to(&second_image))?;
    Ok(CaseReport {
        metric: metric.to_string(),
        case: *case,
        first_image,
        second_image,
        pre,
        post,
        ratio: post / pre,
    })
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ViolationRecord {
    pub metric: String,
    pub seed: u64,
    pub trial: u64,
    pub unital_only: bool,
    pub scale: f64,
    pub state: Spherical,
    pub differential: [f64; 3],
    pub u: f64,
    pub v: f64,
    pub pre: f64,
    pub post: f64,
    pub ratio: f64,
}

impl ViolationRecord {
    pub fn case(&self) -> CaseSpec {
        CaseSpec {
            state: self.state,
            differential: self.differential,
            u: self.u,
            v: self.v,
        }
    }
}

/// Draws trial `index` of a configuration.
pub fn sample_case(cfg: &SearchConfig, index: u64) -> CaseSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(index);
    let edge = 2.0 * cfg.scale;
    let state = loop {
        let r = libm::cbrt(rng.random::<f64>());
        let theta = libm::acos(2.0 * rng.random::<f64>() - 1.0);
        let phi = TAU * rng.random::<f64>();
        if r > edge && r < 1.0 - edge && theta > edge && theta < PI - edge {
            break Spherical::new(r, theta, phi);
        }
    };
    let mut differential = [0.0; 3];
    for d in &mut differential {
        *d = cfg.scale * (2.0 * rng.random::<f64>() - 1.0);
    }
    let u = TAU * rng.random::<f64>();
    let v = TAU * rng.random::<f64>();
    CaseSpec {
        state,
        differential,
        u: if cfg.unital_only { 0.0 } else { u },
        v,
    }
}

/// Trial `index` as a record, whether or not it is a violation.
pub fn trial_record(cfg: &SearchConfig, index: u64) -> Result<ViolationRecord> {
    let case = sample_case(cfg, index);
    let report = evaluate_case(cfg.metric, &case)?;
    Ok(ViolationRecord {
        metric: report.metric,
        seed: cfg.seed,
        trial: index,
        unital_only: cfg.unital_only,
        scale: cfg.scale,
        state: case.state,
        differential: case.differential,
        u: case.u,
        v: case.v,
        pre: report.pre,
        post: report.post,
        ratio: report.ratio,
    })
}

/// Runs one trial; `Some` when it is a violation.
pub fn run_trial(cfg: &SearchConfig, index: u64) -> Result<Option<ViolationRecord>> {
    let rec = trial_record(cfg, index)?;
    Ok((rec.post > rec.pre * (1.0 + cfg.margin)).then_some(rec))
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SearchSummary {
    pub metric: String,
    pub seed: u64,
    pub trials: u64,
    pub violations: usize,
    /// Largest `post/pre` over all trials.
    pub max_ratio: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchOutcome {
    pub records: Vec<ViolationRecord>,
    pub summary: SearchSummary,
}

/// All violations among `cfg.trials` trials, in trial order.
pub fn search<X: Executor>(cfg: &SearchConfig, exec: &X) -> Result<SearchOutcome> {
    cfg.validate()?;
    let chunks = cfg.trials.div_ceil(CHUNK);
    let parts = exec.map_indexed(
        chunks as usize,
        |c| -> Result<(Vec<ViolationRecord>, f64)> {
            let start = c as u64 * CHUNK;
            let end = (start + CHUNK).min(cfg.trials);
            let mut records = Vec::new();
            let mut max_ratio = f64::NEG_INFINITY;
            for i in start..end {
                let rec = trial_record(cfg, i)?;
                max_ratio = max_ratio.max(rec.ratio);
                if rec.post > rec.pre * (1.0 + cfg.margin) {
                    records.push(rec);
                }
            }
            Ok((records, max_ratio))
        },
    );
    let mut records = Vec::new();
    let mut max_ratio = f64::NEG_INFINITY;
    for part in parts {
        let (r, m) = part?;
        records.extend(r);
        max_ratio = max_ratio.max(m);
    }
    Ok(SearchOutcome {
        summary: SearchSummary {
            metric: cfg.metric.to_string(),
            seed: cfg.seed,
            trials: cfg.trials,
            violations: records.len(),
            max_ratio,
        },
        records,
    })
}

/// Recomputes a record from its stored coordinates.
pub fn reverify(record: &ViolationRecord) -> Result<CaseReport> {
    let metric: MetricModel = record.metric.parse()?;
    evaluate_case(metric, &record.case())
}

/// Regenerates a record from its seed, trial index and sampling settings.
/// An unaltered record compares equal to the result.
pub fn replay(record: &ViolationRecord) -> Result<ViolationRecord> {
    let metric: MetricModel = record.metric.parse()?;
    let cfg = SearchConfig {
        unital_only: record.unital_only,
        scale: record.scale,
        ..SearchConfig::new(metric, record.trial + 1, record.seed)
    };
    cfg.validate()?;
    trial_record(&cfg, record.trial)
}
