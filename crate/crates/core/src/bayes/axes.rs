//! Measurement axis sets and spin-measurement likelihoods.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::{dot, mat_vec, norm, Mat3, Vec3};

/// Axes through antipodal vertex pairs of a Platonic solid inscribed in the
/// Bloch sphere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Platonic {
    Octahedron,
    Cube,
    Icosahedron,
    Dodecahedron,
}

impl Platonic {
    pub const ALL: [Platonic; 4] = [
        Platonic::Octahedron,
        Platonic::Cube,
        Platonic::Icosahedron,
        Platonic::Dodecahedron,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            Platonic::Octahedron => "OCTAHEDRON-3",
            Platonic::Cube => "CUBE-4",
            Platonic::Icosahedron => "ICOSAHEDRON-6",
            Platonic::Dodecahedron => "DODECAHEDRON-10",
        }
    }

    pub fn axis_count(&self) -> usize {
        match self {
            Platonic::Octahedron => 3,
            Platonic::Cube => 4,
            Platonic::Icosahedron => 6,
            Platonic::Dodecahedron => 10,
        }
    }

    fn raw_axes(&self) -> Vec<Vec3> {
        let g = 0.5 * (1.0 + libm::sqrt(5.0));
        let cube = [
            [1.0, 1.0, 1.0],
            [1.0, 1.0, -1.0],
            [1.0, -1.0, 1.0],
            [-1.0, 1.0, 1.0],
        ];
        let cyclic = |a: f64, b: f64| {
            [
                [0.0, a, b],
                [0.0, a, -b],
                [a, b, 0.0],
                [a, -b, 0.0],
                [b, 0.0, a],
                [-b, 0.0, a],
            ]
        };
        match self {
            Platonic::Octahedron => alloc::vec![[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
            Platonic::Cube => cube.to_vec(),
            Platonic::Icosahedron => cyclic(1.0, g).to_vec(),
            Platonic::Dodecahedron => cube.iter().copied().chain(cyclic(1.0 / g, g)).collect(),
        }
    }
}

impl FromStr for Platonic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let is = |names: &[&str]| names.iter().any(|n| n.eq_ignore_ascii_case(s));
        if is(&["OCTAHEDRON-3", "OCTAHEDRON", "OCT", "OCT3"]) {
            Ok(Platonic::Octahedron)
        } else if is(&["CUBE-4", "CUBE", "CUBE4"]) {
            Ok(Platonic::Cube)
        } else if is(&["ICOSAHEDRON-6", "ICOSAHEDRON", "ICOS", "ICOS6"]) {
            Ok(Platonic::Icosahedron)
        } else if is(&["DODECAHEDRON-10", "DODECAHEDRON", "DODE", "DODE10"]) {
            Ok(Platonic::Dodecahedron)
        } else {
            Err(Error::UnknownId(s.to_string()))
        }
    }
}

/// A set of distinct measurement directions (unit vectors, no two parallel).
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AxisSet {
    label: String,
    axes: Vec<Vec3>,
}

const UNIT_TOLERANCE: f64 = 1e-12;

impl AxisSet {
    pub fn platonic(solid: Platonic) -> Self {
        let axes = solid
            .raw_axes()
            .into_iter()
            .map(|a| {
                let n = norm(&a);
                [a[0] / n, a[1] / n, a[2] / n]
            })
            .collect();
        Self {
            label: solid.label().to_string(),
            axes,
        }
    }

    /// Validates that every axis is a unit vector and no two coincide up to
    /// sign.
    pub fn custom(label: impl Into<String>, axes: Vec<Vec3>) -> Result<Self> {
        if axes.is_empty() {
            return Err(Error::Config("an axis set needs at least one axis".into()));
        }
        for (i, a) in axes.iter().enumerate() {
            if (norm(a) - 1.0).abs() > UNIT_TOLERANCE {
                return Err(Error::Config(format!("axis {i} has norm {}", norm(a))));
            }
            for (j, b) in axes[..i].iter().enumerate() {
                if dot(a, b).abs() > 1.0 - UNIT_TOLERANCE {
                    return Err(Error::Config(format!("axes {j} and {i} are parallel")));
                }
            }
        }
        Ok(Self {
            label: label.into(),
            axes,
        })
    }

    /// The same set with every axis mapped through `rotation`.
    pub fn rotated(&self, rotation: &Mat3) -> Self {
        Self {
            label: format!("{}(rotated)", self.label),
            axes: self.axes.iter().map(|a| mat_vec(rotation, a)).collect(),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn axes(&self) -> &[Vec3] {
        &self.axes
    }

    pub fn len(&self) -> usize {
        self.axes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.axes.is_empty()
    }
}

impl FromStr for AxisSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.parse::<Platonic>().map(AxisSet::platonic)
    }
}

/// Outcome likelihood of `k` "up" and `k` "down" spin results along each
/// axis of a set: `Π_n ((1 − (n·x)²)/2)^k`. Ordering multiplicities are
/// dropped; they cancel when the posterior is normalised.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LikelihoodSpec {
    axes: AxisSet,
    pairs_per_axis: u32,
}

impl LikelihoodSpec {
    pub fn new(axes: AxisSet, pairs_per_axis: u32) -> Result<Self> {
        if pairs_per_axis == 0 {
            return Err(Error::Config("pairs per axis must be at least 1".into()));
        }
        Ok(Self {
            axes,
            pairs_per_axis,
        })
    }

    /// One up/down pair per axis of a Platonic set.
    pub fn platonic(solid: Platonic) -> Self {
        Self {
            axes: AxisSet::platonic(solid),
            pairs_per_axis: 1,
        }
    }

    /// `k` pairs along each coordinate axis: `3k` measurement pairs in all.
    pub fn orthogonal(pairs_per_axis: u32) -> Result<Self> {
        Self::new(AxisSet::platonic(Platonic::Octahedron), pairs_per_axis)
    }

    pub fn axes(&self) -> &AxisSet {
        &self.axes
    }

    pub fn pairs_per_axis(&self) -> u32 {
        self.pairs_per_axis
    }

    /// Total number of up/down pairs.
    pub fn pairs(&self) -> usize {
        self.axes.len() * self.pairs_per_axis as usize
    }

    pub fn ln_factor(&self, x: &Vec3) -> f64 {
        let sum: f64 = self
            .axes
            .axes()
            .iter()
            .map(|n| {
                let c = dot(n, x);
                libm::log((0.5 * (1.0 - c) * (1.0 + c)).max(0.0))
            })
            .sum();
        f64::from(self.pairs_per_axis) * sum
    }

    pub fn factor(&self, x: &Vec3) -> f64 {
        libm::exp(self.ln_factor(x))
    }
}

impl fmt::Display for LikelihoodSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "likelihood({}, k={})",
            self.axes.label(),
            self.pairs_per_axis
        )
    }
}
