//! Command-line front end, thread-pool execution and file formats for
//! [`bloch_infogeo_core`].
//!
//! Series are written as CSV, scalars as JSON and falsifier streams as JSONL.
//! Every output carries a [`RunManifest`](manifest::RunManifest), either
//! embedded or as a `<file>.manifest.json` sidecar. Apart from the
//! manifest's wall time, identical invocations produce identical bytes
//! whatever the thread count.

pub mod cli;
pub mod config;
pub mod error;
pub mod executor;
pub mod ids;
pub mod manifest;
pub mod reference;

pub use error::{CliError, Result};
pub use executor::RayonExecutor;
pub use ids::DensityId;
