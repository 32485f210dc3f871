use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PolytopeError {
    #[error("polytope is unbounded")]
    Unbounded,
    #[error("polytope is empty")]
    Empty,
    #[error("point is not a vertex")]
    NotAVertex,
    #[error("cone is not pointed")]
    NotPointed,
    #[error("pole: 1 - q^(alpha, r) vanishes on ray {0:?}")]
    Pole(Vec<i64>),
    #[error("degenerate exponent: orthogonal to an edge with direction {0:?}")]
    Degenerate(Vec<i64>),
    #[error("extrapolation did not converge (residual {0:e})")]
    NonConvergent(f64),
    #[error("lattice box too large ({0} points)")]
    TooLarge(u128),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("exponent is not integral on the working lattice")]
    NonIntegralExponent,
    #[error("dilation needs lattice vertices")]
    NonIntegralVertex,
    #[error("integer overflow in lattice coordinates")]
    Overflow,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, PolytopeError>;
