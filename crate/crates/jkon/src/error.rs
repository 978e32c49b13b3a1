//! Error type shared across the crate.

use thiserror::Error;

/// Errors produced by evaluation routines.
#[derive(Debug, Error)]
pub enum Error {
    /// Gamma function evaluated at a nonpositive integer.
    #[error("gamma pole at z = {0}")]
    GammaPole(f64),

    /// Result exceeds the representable range of f64.
    #[error("overflow evaluating {what} at {value}")]
    Overflow { what: &'static str, value: f64 },

    /// An argument violates a documented precondition.
    #[error("domain error: {0}")]
    Domain(String),

    /// A parameter violates a documented constraint.
    #[error("invalid parameter {name} = {value}: {constraint}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        constraint: &'static str,
    },

    /// A double series did not meet its tolerance within the term budget.
    #[error("series did not converge within budget ({terms} terms, last block {last_block:e})")]
    NonConvergence { terms: usize, last_block: f64 },

    /// A quadrature rule has too few nodes for the requested polynomial degree.
    #[error("quadrature rule of degree {got} cannot integrate degree {needed} exactly")]
    InsufficientRule { needed: usize, got: usize },

    /// Eigenvalue iteration failed while building a Gauss rule.
    #[error("eigenvalue solver failed for {0}-point rule")]
    EigenFailure(usize),

    /// Configuration file or override could not be parsed.
    #[error("config error: {0}")]
    Config(String),

    /// Unknown evaluation target name.
    #[error("unknown target: {0}")]
    UnknownTarget(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
