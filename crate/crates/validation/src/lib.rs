//! Published reference values, each with the tolerance it is checked to.
//!
//! Density names use the `bloch-infogeo` id syntax: a prior (`BH`, `B`, `MC`,
//! `GKS`, `MBH`) or `<prior>:posterior:<likelihood>`. The `acceptance` test
//! of this crate checks every entry; `bloch-infogeo reproduce-paper` runs
//! the same table from the command line.
#![no_std]

use core::f64::consts::PI;

/// A value and its absolute tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Reference {
    pub value: f64,
    pub tolerance: f64,
}

const fn within(value: f64, tolerance: f64) -> Reference {
    Reference { value, tolerance }
}

/// `D(p ‖ q)` between two named densities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Divergence {
    pub p: &'static str,
    pub q: &'static str,
    pub value: f64,
    pub tolerance: f64,
}

const fn d(p: &'static str, q: &'static str, value: f64, tolerance: f64) -> Divergence {
    Divergence {
        p,
        q,
        value,
        tolerance,
    }
}

pub const BH_VOLUME: Reference = within(0.0983103, 1e-5);
pub const BURES_VOLUME: Reference = within(PI * PI, 1e-7);
/// `e / V` for the identric volume `V`.
pub const IDENTRIC_CONSTANT: Reference = within(0.226321, 1e-4);
/// `(1/4) / V` for the Morozova–Chentsov volume `V`.
pub const MC_CONSTANT: Reference = within(0.00513299, 1e-6);

pub const DIVERGENCES: [Divergence; 21] = [
    d("MC", "BH", 1.99971, 2e-3),
    d("BH", "MC", 1.08908, 2e-3),
    d("BH:posterior:oct3", "MC", 1.43453, 2e-3),
    d("MC:posterior:oct3", "BH", 1.67748, 2e-3),
    d("BH:posterior:oct6", "MC", 1.698, 2e-3),
    d("MC:posterior:oct6", "BH", 1.74938, 2e-3),
    d("MC:posterior:oct9", "BH", 2.02251, 2e-3),
    d("MC", "GKS", 0.386051, 2e-3),
    d("GKS", "MC", 0.329118, 2e-3),
    d("MC:posterior:oct3", "GKS", 0.188481, 2e-3),
    d("GKS:posterior:oct3", "MC", 0.771068, 2e-3),
    d("BH", "B", 0.221827, 2e-3),
    d("B", "BH", 0.342287, 2e-3),
    d("BH:posterior:oct3", "B", 0.432781, 2e-3),
    d("B:posterior:oct3", "BH", 0.2343, 2e-3),
    d("BH:posterior:oct6", "B", 0.662496, 2e-3),
    d("B:posterior:oct6", "BH", 0.306664, 2e-3),
    d("B:posterior:oct9", "BH", 0.432335, 2e-3),
    d("B:posterior:cube4", "BH", 0.0774351, 2e-3),
    d("B:posterior:icos6", "BH", 0.122255, 2e-3),
    d("B:posterior:dode10", "BH", 0.456816, 2e-3),
];

pub const MODIFIED_BH_DIVERGENCES: [Divergence; 4] = [
    d("B", "MBH", 8.36598e-6, 5e-7),
    d("MBH", "B", 8.37746e-6, 5e-7),
    d("B:posterior:oct3", "MBH", 0.138763, 2e-3),
    d("MBH:posterior:oct3", "B", 0.143014, 2e-3),
];

/// Relative tolerance on the counterexample distances.
pub const DISTANCE_REL_TOLERANCE: f64 = 1e-4;
pub const PRE_DISTANCE: f64 = 2.14985e-6;
pub const POST_DISTANCE: f64 = 2.15078e-6;
/// `(r, θ, φ)` of the two channel images.
pub const FIRST_IMAGE: [f64; 3] = [0.546143, 0.752553, 0.351613];
pub const SECOND_IMAGE: [f64; 3] = [0.546138, 0.752544, 0.351621];
pub const IMAGE_TOLERANCE: f64 = 1e-5;

/// Printed as `−6.57644`.
pub const BH_REDUNDANCY: Reference = within(-6.57644, 2e-4);
pub const IDENTRIC_REDUNDANCY: Reference = within(-1.77062, 2e-3);

pub const HESSIAN_POINTS: usize = 50;
pub const HESSIAN_MAX_RADIUS: f64 = 0.95;
/// Relative to the largest diagonal entry of the tensor.
pub const HESSIAN_REL_TOLERANCE: f64 = 1e-5;

pub const ROTATIONS: usize = 5;
pub const ROTATION_SPREAD: f64 = 1e-6;
pub const WORKER_COUNTS: [usize; 3] = [1, 4, 16];
pub const CONTROL_TRIALS: u64 = 100_000;
/// Mode of the radial marginal of `BH:posterior:oct3`.
pub const TURNING_POINT: Reference = within(0.7727551, 1e-3);
