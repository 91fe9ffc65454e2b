//! Exact linear algebra over the rationals.

mod matrix;
mod modular;
mod rational;
mod subspace;
mod unimodular;

pub use matrix::Matrix;
pub use rational::Rational;
pub(crate) use rational::primitive_integer_vector;
pub(crate) use modular::span_certified;
pub use subspace::{kernel, Subspace};
pub use unimodular::random_unimodular;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("dimension must be at least 1")]
    EmptyDimension,
    #[error("cannot parse rational from {0:?}")]
    Parse(String),
}

/// Row rank of `m`.
pub fn rank(m: &Matrix) -> usize {
    m.rank()
}

/// Canonical reduced row-echelon form of `m` with zero rows dropped.
pub fn rref(m: &Matrix) -> Matrix {
    m.rref()
}

/// Whether `v` lies in `s`.
pub fn member(s: &Subspace, v: &[Rational]) -> Result<bool, LinError> {
    s.member(v)
}

pub(crate) fn unit_vector(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::one();
    v
}
