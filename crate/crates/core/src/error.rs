use thiserror::Error;

use crate::pretzel::Violation;

/// Errors raised by the toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the formula.
    #[error("{what}: value {value} outside domain {domain}")]
    Domain {
        what: &'static str,
        value: f64,
        domain: &'static str,
    },

    /// The collar parameter k reached 1/2, where the collar formula degenerates.
    #[error("collar parameter k = {k} is not below 1/2")]
    CollarParameter { k: f64 },

    /// The hypotheses of the cone-deformation bounds are not met.
    #[error("{what}: normalized length {value} does not exceed {gate}")]
    Validity { what: &'static str, value: f64, gate: f64 },

    /// An iterative method failed to converge.
    #[error("{what} did not converge: {reason} (last residual {residual:e})")]
    Numerical {
        what: &'static str,
        reason: String,
        residual: f64,
        trace: Vec<f64>,
    },

    /// Two independent constructions of the same quantity disagree.
    #[error("{what}: routes disagree by {gap:e} (limit {limit:e})")]
    Consistency { what: &'static str, gap: f64, limit: f64 },

    /// Malformed request, such as an empty slope list or a missing input.
    #[error("usage: {0}")]
    Usage(String),

    /// A slot index outside `1..m`.
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    /// A tuple that breaks the family constraints.
    #[error("invalid tuple: {0:?}")]
    InvalidTuple(Vec<Violation>),

    /// Enumeration would visit more arrangements than the guard allows.
    #[error("orbit enumeration would visit {states} arrangements (limit {limit}); pass the override to proceed")]
    SizeGuard { states: u128, limit: u128 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(what: &'static str, value: f64, domain: &'static str) -> Result<T> {
    Err(Error::Domain { what, value, domain })
}
