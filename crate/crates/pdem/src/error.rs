//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The square-root argument of the effective angular momentum is
    /// negative: the (D, l, λ) combination has no real mapping.
    #[error("negative radicand {radicand} in effective angular momentum for D={dim}, l={l}")]
    NegativeRadicand { radicand: f64, dim: u32, l: u32 },

    /// λ ≤ −2 makes the mapping q(r) = r^ν non-monotone (ν ≤ 0).
    #[error("invalid mass exponent lambda={lambda}: nu = 1 + lambda/2 must be positive")]
    InvalidLambda { lambda: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("domain error: {0}")]
    DomainError(String),

    #[error("normalization quadrature failed: {0}")]
    QuadratureFailure(String),

    /// The potential is not finite at a grid point.
    #[error("potential not finite at r={r}")]
    SingularPotential { r: f64 },

    #[error("eigensolver failed to converge: {0}")]
    ConvergenceFailure(String),

    /// Observed finite-difference convergence order fell below 1.5,
    /// usually a sign of boundary-layer contamination of the grid.
    #[error("observed convergence order {observed:.3} below 1.5 (expected ~2); enlarge r_max or refine near the origin")]
    OrderMismatch { observed: f64 },

    /// One message per violated invariant, each naming the offending field.
    #[error("parameter validation failed: {}", .0.join("; "))]
    Validation(Vec<String>),
}
