//! Information geometry of two-level quantum systems.
//!
//! States are points of the Bloch ball `|x| <= 1`, written in Cartesian
//! coordinates `(x1, x2, x3)` or in the spherical chart
//!
//! ```text
//! x1 = r cos θ,   x2 = r sin θ cos φ,   x3 = r sin θ sin φ
//! ```
//!
//! (polar axis along `x1`). Every metric handled here is diagonal in that
//! chart, `ds² = a(r) dr² + b(r) dn²` with `dn² = r² dθ² + r² sin²θ dφ²`:
//!
//! | Metric | `a(r)` | `b(r)` |
//! |--------|--------|--------|
//! | Brody–Hughston (BH) | `(4 − r² csch²(r/2)) / 4r²` | `(r coth(r/2) − 2) / 2r²` |
//! | monotone, operator monotone `f` | `1 / (1 − r²)` | `1 / ((1 + r) f((1 − r)/(1 + r)))` |
//! | Bach–Guiasu | `2(1 + r²) / (1 − r²)²` | `2 / (1 − r²)` |
//! | modified BH | `1 / 12(1 − r²)` | BH `b(r)` |
//!
//! The crate is split along the computation:
//!
//! - [`state`]: Bloch vectors, charts and 2×2 density matrices.
//! - [`metric`]: coefficient functions, line elements, Cartesian tensors, the
//!   generating-function Hessian and tensor dominance diagnostics.
//! - [`quadrature`]: deterministic tensor-product integration over the ball,
//!   normalised densities, relative entropy and radial marginals.
//! - [`bayes`]: volume-element priors, spin-measurement likelihoods on
//!   Platonic axis sets, posteriors and the comparative-noninformativity test.
//! - [`channel`]: affine qubit channels and their Choi matrices.
//! - [`falsifier`]: seeded random search for monotonicity violations.
//!
//! Heavy loops go through an [`Executor`]; [`Sequential`] is provided here and
//! a thread-pool executor lives in the `bloch-infogeo` crate. Results never
//! depend on the executor.
#![no_std]
#![forbid(unsafe_code)]
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

extern crate alloc;

pub mod bayes;
pub mod channel;
mod error;
mod exec;
pub mod falsifier;
pub mod linalg;
pub mod metric;
pub mod quadrature;
pub mod state;

pub use error::{Error, Result};
pub use exec::{Executor, Sequential};
