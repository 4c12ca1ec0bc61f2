//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("arity {arity} exceeds the truncation bound {max}")]
    Truncation { arity: usize, max: usize },

    #[error("polynomial degree {polydegree} exceeds the word bound {bound}")]
    PolydegreeOverflow { polydegree: usize, bound: usize },

    #[error("cochain is not a Maurer-Cartan element")]
    NotMaurerCartan,

    #[error("derivation does not square the deformed differential to zero")]
    NotMaurerCartanRel,

    #[error("deformation is not flat: {0}")]
    NotFlat(String),

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("invalid base: {0}")]
    InvalidBase(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
