use alloc::string::String;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{what} = {value} is outside {domain}")]
    Domain {
        what: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("quadrature did not settle: {coarse} vs {fine} (tolerance {tolerance})")]
    Accuracy {
        coarse: f64,
        fine: f64,
        tolerance: f64,
    },

    #[error("channel `{channel}` maps a state outside the Bloch ball (|x'| = {norm})")]
    Positivity { channel: String, norm: f64 },

    #[error("density mass {0} is not positive and finite")]
    Mass(f64),

    #[error("unknown identifier `{0}`")]
    UnknownId(String),

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn domain(what: &'static str, value: f64, domain: &'static str) -> Error {
    Error::Domain {
        what,
        value,
        domain,
    }
}
