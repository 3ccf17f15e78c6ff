//! Error type shared by every module of the crate.

use thiserror::Error;

/// Failure modes of the physics kernels.
#[derive(Debug, Error)]
#[non_exhaustive]
pub enum Error {
    /// An input lies outside the mathematical domain of the operation
    /// (non-positive gap, permittivity below one, divergent integral, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A structural input (stack layout, geometry parameters) is inconsistent.
    #[error("configuration error: {0}")]
    Config(String),

    /// Text input failed to parse; `line` is 1-based.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A constructed object violates its own invariants.
    #[error("validation error: {0}")]
    Validation(String),

    /// Adaptive quadrature stopped without reaching the requested tolerance.
    /// `value` is the best estimate, `error` the achieved absolute error
    /// bound, `requested` the absolute target that was not met.
    #[error("quadrature did not converge: value {value:.6e}, error bound {error:.3e}, requested {requested:.3e}")]
    Quadrature {
        value: f64,
        error: f64,
        requested: f64,
    },

    /// The operation has no meaning for this input variant; the message names
    /// the dedicated entry point to use instead.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A numerical consistency check failed (sign change across a stencil,
    /// disagreement between independent differentiation paths, ...).
    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;
