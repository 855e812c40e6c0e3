use std::time::Instant;

use bloch_infogeo_core::quadrature::QuadratureSpec;
use serde::Serialize;
use serde_json::Value;

/// Provenance of one run: the command, its echoed configuration, and how
/// long it took. `wall_time_s` is the only field that varies between
/// identical invocations.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub config: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quadrature: Option<QuadratureSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub threads: usize,
    pub tool_version: &'static str,
    pub wall_time_s: f64,
}

/// Starts the clock for a manifest.
#[derive(Debug)]
pub struct ManifestBuilder {
    command: String,
    config: Value,
    quadrature: Option<QuadratureSpec>,
    seed: Option<u64>,
    threads: usize,
    started: Instant,
}

impl ManifestBuilder {
    pub fn new(command: &str, config: Value, threads: usize) -> Self {
        Self {
            command: command.to_string(),
            config,
            quadrature: None,
            seed: None,
            threads,
            started: Instant::now(),
        }
    }

    pub fn quadrature(mut self, spec: QuadratureSpec) -> Self {
        self.quadrature = Some(spec);
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn finish(&self) -> RunManifest {
        RunManifest {
            command: self.command.clone(),
            config: self.config.clone(),
            quadrature: self.quadrature,
            seed: self.seed,
            threads: self.threads,
            tool_version: env!("CARGO_PKG_VERSION"),
            wall_time_s: self.started.elapsed().as_secs_f64(),
        }
    }
}
