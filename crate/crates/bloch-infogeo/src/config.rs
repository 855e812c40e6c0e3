//! `key = value` overrides of the quadrature spec.
//!
//! ```text
//! # comments and blank lines are ignored
//! radial = 128
//! polar = 64
//! azimuthal = 64
//! radial_map = graded_sine      # linear | sine | graded_sine
//! azimuthal_rule = trapezoid    # trapezoid | gauss_legendre
//! tolerance = 1e-6
//! ```

use std::path::Path;

use bloch_infogeo_core::quadrature::{AzimuthalRule, QuadratureSpec, RadialMap};

use crate::error::{CliError, Result};

pub fn load_spec(path: &Path, base: QuadratureSpec) -> Result<QuadratureSpec> {
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::io(path.display().to_string(), e))?;
    parse_spec(&text, base).map_err(|(line, message)| CliError::Config {
        path: path.display().to_string(),
        line,
        message,
    })
}

/// Applies the overrides in `text` to `base`. Errors carry the 1-based line.
pub fn parse_spec(
    text: &str,
    base: QuadratureSpec,
) -> std::result::Result<QuadratureSpec, (usize, String)> {
    let mut spec = base;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |m: String| (i + 1, m);
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| err(format!("expected key = value, got `{line}`")))?;
        let (key, value) = (key.trim().to_ascii_lowercase(), value.trim());
        let count = || {
            value
                .parse::<usize>()
                .map_err(|_| err(format!("{key}: `{value}` is not a node count")))
        };
        match key.as_str() {
            "radial" => spec.radial = count()?,
            "polar" => spec.polar = count()?,
            "azimuthal" => spec.azimuthal = count()?,
            "tolerance" => {
                spec.tolerance = value
                    .parse()
                    .map_err(|_| err(format!("tolerance: `{value}` is not a number")))?
            }
            "radial_map" => {
                spec.radial_map = match value.to_ascii_lowercase().as_str() {
                    "linear" => RadialMap::Linear,
                    "sine" => RadialMap::Sine,
                    "graded_sine" => RadialMap::GradedSine,
                    _ => return Err(err(format!("radial_map: unknown map `{value}`"))),
                }
            }
            "azimuthal_rule" => {
                spec.azimuthal_rule = match value.to_ascii_lowercase().as_str() {
                    "trapezoid" => AzimuthalRule::Trapezoid,
                    "gauss_legendre" => AzimuthalRule::GaussLegendre,
                    _ => return Err(err(format!("azimuthal_rule: unknown rule `{value}`"))),
                }
            }
            _ => return Err(err(format!("unknown key `{key}`"))),
        }
    }
    spec.validate().map_err(|e| (0, e.to_string()))?;
    Ok(spec)
}
