//! Nilpotent Lie algebras given only by structure constants: brackets, the
//! lower central series, the associated graded algebra and its pairings.
//!
//! Nothing here looks at root data.

mod algebra;
mod series;

pub use algebra::{bracket, change_basis, verify_jacobi, JacobiReport, NilpotentAlgebra, SparseVec};
pub use series::{
    graded, graded_constants, graded_pairing, left_kernel, lower_central_series, right_kernel, BilinearPairing, Filtration,
    GradedAlgebra,
};

use crate::exactlin::LinError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NilError {
    #[error(transparent)]
    Lin(#[from] LinError),
    #[error("bracket pair ({i}, {j}) invalid for dimension {dim} (need i < j < dim)")]
    BadPair { i: usize, j: usize, dim: usize },
    #[error("bracket pair ({i}, {j}) listed twice")]
    DuplicatePair { i: usize, j: usize },
    #[error("bracket ({i}, {j}) lists an output index twice")]
    DuplicateTerm { i: usize, j: usize },
    #[error("output index {k} out of range for dimension {dim}")]
    BadIndex { k: usize, dim: usize },
    #[error("not nilpotent: lower central series stalls at dimension {stalled_at}")]
    NotNilpotent { stalled_at: usize },
    #[error("change of basis matrix is singular")]
    SingularBasis,
    #[error("not a descending chain from the full space to zero")]
    NotAFiltration,
    #[error("representatives do not form a coset basis of the graded pieces")]
    InvalidRepresentatives,
}
