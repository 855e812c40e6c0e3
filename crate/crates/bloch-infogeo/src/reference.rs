//! Checks of the published values in [`bloch_infogeo_validation`].

use std::collections::BTreeMap;
use std::f64::consts::{E, PI};

use bloch_infogeo_validation as published;

use bloch_infogeo_core::falsifier::{evaluate_case, published_case};
use bloch_infogeo_core::metric::{
    dominance_report, fisher_from_generating, MetricModel, Normalization, DEFAULT_HESSIAN_STEP,
};
use bloch_infogeo_core::quadrature::{redundancy_constant, BallDensity, DensitySource, Quadrature};
use bloch_infogeo_core::state::{QubitState, Spherical};
use bloch_infogeo_core::Executor;
use serde::Serialize;

use crate::error::Result;
use crate::ids::DensityId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    /// `|actual − expected| <= tolerance`.
    Absolute,
    /// `|actual − expected| <= tolerance · |expected|`.
    Relative,
    /// `actual > expected`.
    Above,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub criterion: u8,
    pub name: String,
    pub expected: f64,
    pub actual: f64,
    pub tolerance: f64,
    pub comparison: Comparison,
    pub pass: bool,
}

impl Check {
    pub fn new(
        criterion: u8,
        name: impl Into<String>,
        expected: f64,
        actual: f64,
        tolerance: f64,
        comparison: Comparison,
    ) -> Self {
        let gap = (actual - expected).abs();
        let pass = match comparison {
            Comparison::Absolute => gap <= tolerance,
            Comparison::Relative => gap <= tolerance * expected.abs(),
            Comparison::Above => actual > expected,
        };
        Self {
            criterion,
            name: name.into(),
            expected,
            actual,
            tolerance,
            comparison,
            pass,
        }
    }

    /// One report line.
    pub fn line(&self) -> String {
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        let bound = match self.comparison {
            Comparison::Absolute => format!("±{:e}", self.tolerance),
            Comparison::Relative => format!("±{:e} rel", self.tolerance),
            Comparison::Above => "lower bound".to_string(),
        };
        format!(
            "{verdict} [{}] {}: expected {} ({bound}), got {}",
            self.criterion, self.name, self.expected, self.actual
        )
    }
}

fn abs(criterion: u8, name: &str, r: published::Reference, actual: f64) -> Check {
    Check::new(
        criterion,
        name,
        r.value,
        actual,
        r.tolerance,
        Comparison::Absolute,
    )
}

/// Builds each named density once.
pub struct DensityCache<'q, X: Executor> {
    quad: &'q Quadrature<X>,
    built: BTreeMap<String, BallDensity>,
}

impl<'q, X: Executor> DensityCache<'q, X> {
    pub fn new(quad: &'q Quadrature<X>) -> Self {
        Self {
            quad,
            built: BTreeMap::new(),
        }
    }

    pub fn get(&mut self, name: &str) -> Result<&BallDensity> {
        let id: DensityId = name.parse()?;
        let key = id.to_string();
        if !self.built.contains_key(&key) {
            let d = id.build(self.quad)?;
            self.built.insert(key.clone(), d);
        }
        Ok(&self.built[&key])
    }

    pub fn divergence(&mut self, p: &str, q: &str) -> Result<f64> {
        let quad = self.quad;
        let p = self.get(p)?.clone();
        let q = self.get(q)?;
        Ok(quad.relative_entropy(&p, q)?)
    }
}

/// Volume normalisations (criterion 1).
pub fn normalizations<X: Executor>(quad: &Quadrature<X>) -> Result<Vec<Check>> {
    let volume = |m: &str| -> Result<f64> {
        Ok(quad.mass(&DensitySource::Volume(m.parse::<MetricModel>()?))?)
    };
    Ok(vec![
        abs(1, "BH volume", published::BH_VOLUME, volume("BH")?),
        abs(
            1,
            "Bures volume",
            published::BURES_VOLUME,
            volume("MONOTONE:BURES")?,
        ),
        abs(
            1,
            "identric leading constant",
            published::IDENTRIC_CONSTANT,
            E / volume("MONOTONE:IDENTRIC")?,
        ),
        abs(
            1,
            "MC leading constant",
            published::MC_CONSTANT,
            0.25 / volume("MONOTONE:MC")?,
        ),
    ])
}

/// Prior/posterior divergences (criteria 2 and 3).
pub fn divergences<X: Executor>(quad: &Quadrature<X>) -> Result<Vec<Check>> {
    let mut cache = DensityCache::new(quad);
    let mut out = Vec::new();
    let tables = [
        (2, &published::DIVERGENCES[..]),
        (3, &published::MODIFIED_BH_DIVERGENCES[..]),
    ];
    for (criterion, table) in tables {
        for e in table {
            let d = cache.divergence(e.p, e.q)?;
            out.push(Check::new(
                criterion,
                format!("D({} || {})", e.p, e.q),
                e.value,
                d,
                e.tolerance,
                Comparison::Absolute,
            ));
        }
    }
    Ok(out)
}

/// The published monotonicity counterexample (criterion 4).
pub fn counterexample() -> Result<Vec<Check>> {
    let report = evaluate_case(MetricModel::BrodyHughston, &published_case())?;
    let mut out = vec![
        Check::new(
            4,
            "pre-distance",
            published::PRE_DISTANCE,
            report.pre,
            published::DISTANCE_REL_TOLERANCE,
            Comparison::Relative,
        ),
        Check::new(
            4,
            "post-distance",
            published::POST_DISTANCE,
            report.post,
            published::DISTANCE_REL_TOLERANCE,
            Comparison::Relative,
        ),
    ];
    let coords = |s: &Spherical| [s.r, s.theta, s.phi];
    for (which, paper, got) in [
        ("first", published::FIRST_IMAGE, coords(&report.first_image)),
        (
            "second",
            published::SECOND_IMAGE,
            coords(&report.second_image),
        ),
    ] {
        for ((name, e), a) in ["r", "theta", "phi"].iter().zip(paper).zip(got) {
            out.push(Check::new(
                4,
                format!("{which} image {name}"),
                e,
                a,
                published::IMAGE_TOLERANCE,
                Comparison::Absolute,
            ));
        }
    }
    out.push(Check::new(
        4,
        "post/pre ratio",
        1.0,
        report.ratio,
        0.0,
        Comparison::Above,
    ));
    Ok(out)
}

/// Minimax redundancy constants (criterion 5).
pub fn redundancies<X: Executor>(quad: &Quadrature<X>) -> Result<Vec<Check>> {
    let bh = quad.mass(&DensitySource::Volume(MetricModel::BrodyHughston))?;
    let identric = quad.mass(&DensitySource::Volume(MetricModel::IDENTRIC))?;
    Ok(vec![
        abs(
            5,
            "BH redundancy",
            published::BH_REDUNDANCY,
            redundancy_constant(3, bh)?,
        ),
        abs(
            5,
            "identric redundancy",
            published::IDENTRIC_REDUNDANCY,
            redundancy_constant(3, identric)?,
        ),
    ])
}

/// Worst relative gap between the numeric Hessian of `ln Z` and the BH
/// tensor over 50 points of a deterministic interior lattice (criterion 6).
pub fn hessian_equivalence() -> Result<Check> {
    let n = published::HESSIAN_POINTS;
    let golden = 0.5 * (5f64.sqrt() - 1.0);
    let mut worst = 0.0f64;
    for i in 0..n {
        let u = (i as f64 + 0.5) / n as f64;
        let r = published::HESSIAN_MAX_RADIUS * u.cbrt();
        let theta = (1.0 - 2.0 * ((i as f64 * golden).fract())).acos();
        let phi = 2.0 * PI * ((i as f64 * golden * golden).fract());
        let s = QubitState::from_spherical(Spherical::new(r, theta, phi))?;
        let h = fisher_from_generating(&s, DEFAULT_HESSIAN_STEP)?;
        let g = MetricModel::BrodyHughston.tensor_cartesian(s.cartesian())?;
        let scale = g[0][0].max(g[1][1]).max(g[2][2]);
        for (hr, gr) in h.iter().zip(&g) {
            for (a, b) in hr.iter().zip(gr) {
                worst = worst.max((a - b).abs() / scale);
            }
        }
    }
    Ok(Check::new(
        6,
        "Hessian of ln Z vs BH tensor (max rel gap)",
        0.0,
        worst,
        published::HESSIAN_REL_TOLERANCE,
        Comparison::Absolute,
    ))
}

/// Turning point of the posterior radial marginal (criterion 7).
pub fn turning_point<X: Executor>(quad: &Quadrature<X>) -> Result<Check> {
    let p = "BH:posterior:oct3".parse::<DensityId>()?.build(quad)?;
    let mode = quad.radial_marginal_mode(&p, 0.5, 0.95)?;
    Ok(abs(
        7,
        "BH:posterior:oct3 marginal turning point",
        published::TURNING_POINT,
        mode,
    ))
}

/// Monotone radial coefficient above the BH one on (0, 1) (criterion 8).
pub fn radial_ordering() -> Result<Check> {
    let radii: Vec<f64> = (1..=99).map(|i| i as f64 / 100.0).collect();
    let report = dominance_report(
        MetricModel::BURES,
        MetricModel::BrodyHughston,
        &radii,
        Normalization::AsGiven,
    )?;
    let min_gap = report
        .points
        .iter()
        .map(|p| p.radial_gap)
        .fold(f64::INFINITY, f64::min);
    Ok(Check::new(
        8,
        "min radial gap monotone − BH on (0, 1)",
        0.0,
        min_gap,
        0.0,
        Comparison::Above,
    ))
}

/// Every table check, in criterion order.
pub fn reproduce<X: Executor>(quad: &Quadrature<X>) -> Result<Vec<Check>> {
    let mut out = normalizations(quad)?;
    out.extend(divergences(quad)?);
    out.extend(counterexample()?);
    out.extend(redundancies(quad)?);
    out.push(hessian_equivalence()?);
    out.push(turning_point(quad)?);
    out.push(radial_ordering()?);
    Ok(out)
}
