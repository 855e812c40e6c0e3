//! Pointwise comparison of two metric tensors.
//!
//! Both tensors are diagonal in the frame (r̂, two normal directions), so the
//! eigenvalues of `G_a − G_b` are the radial and normal coefficient gaps and
//! the report depends on the radius only.

use alloc::vec::Vec;

use super::{MetricModel, Radius};
use crate::error::Result;

/// How the two tensors are scaled before subtracting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Normalization {
    /// Coefficients exactly as defined.
    #[default]
    AsGiven,
    /// Each tensor divided by its radial coefficient at the origin, so both
    /// agree with the classical Fisher information at the maximally mixed
    /// state.
    FisherAdjusted,
    /// Monotone metrics multiplied by ¼ (the convention in which the Bures
    /// metric is a quarter of the SLD Fisher information); others as given.
    Quarter,
}

impl Normalization {
    fn scale(&self, m: &MetricModel) -> f64 {
        match self {
            Normalization::AsGiven => 1.0,
            Normalization::FisherAdjusted => 1.0 / m.coefficients_at(Radius::new(0.0)).radial,
            Normalization::Quarter => match m {
                MetricModel::Monotone(_) => 0.25,
                _ => 1.0,
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DominancePoint {
    pub r: f64,
    pub radial_gap: f64,
    pub normal_gap: f64,
    /// Smallest eigenvalue of `G_a − G_b`.
    pub min_eigenvalue: f64,
    pub sign: Sign,
}

/// A maximal run of consecutive grid points sharing one sign.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SignBand {
    pub from_r: f64,
    pub to_r: f64,
    pub sign: Sign,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DominanceReport {
    pub normalization: Normalization,
    pub points: Vec<DominancePoint>,
    pub bands: Vec<SignBand>,
}

impl DominanceReport {
    /// `true` when no grid point has a negative minimum eigenvalue.
    pub fn dominates(&self) -> bool {
        self.points.iter().all(|p| p.sign != Sign::Negative)
    }
}

/// Minimum eigenvalue of `G_a − G_b` at every radius of `radii` (each in
/// `[0, 1)`), with the sign pattern summarised as bands.
pub fn dominance_report(
    a: MetricModel,
    b: MetricModel,
    radii: &[f64],
    normalization: Normalization,
) -> Result<DominanceReport> {
    let (sa, sb) = (normalization.scale(&a), normalization.scale(&b));
    let mut points = Vec::with_capacity(radii.len());
    for &r in radii {
        let ca = a.coefficients(r)?;
        let cb = b.coefficients(r)?;
        let radial_gap = sa * ca.radial - sb * cb.radial;
        let normal_gap = sa * ca.normal - sb * cb.normal;
        let min_eigenvalue = radial_gap.min(normal_gap);
        let size = (sa * ca.radial)
            .max(sb * cb.radial)
            .max(sa * ca.normal)
            .max(sb * cb.normal);
        let sign = if min_eigenvalue.abs() <= 1e-12 * size {
            Sign::Zero
        } else if min_eigenvalue > 0.0 {
            Sign::Positive
        } else {
            Sign::Negative
        };
        points.push(DominancePoint {
            r,
            radial_gap,
            normal_gap,
            min_eigenvalue,
            sign,
        });
    }
    let mut bands: Vec<SignBand> = Vec::new();
    for p in &points {
        match bands.last_mut() {
            Some(band) if band.sign == p.sign => band.to_r = p.r,
            _ => bands.push(SignBand {
                from_r: p.r,
                to_r: p.r,
                sign: p.sign,
            }),
        }
    }
    Ok(DominanceReport {
        normalization,
        points,
        bands,
    })
}
