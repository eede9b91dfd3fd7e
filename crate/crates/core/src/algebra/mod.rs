//! Finite alphabets and dense matrices over them.

mod domain;
pub(crate) mod matrix;
mod subspace;

pub use domain::{
    Domain, DomainKind, Element, FieldElement, FieldSpec, RingElement, RingSpec, MAX_DOMAIN_SIZE,
};
pub use matrix::Matrix;
pub use subspace::{all_matrices, count_matrices, matrix_from_index, rref_bases, MatrixOdometer};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("characteristic {0} is not prime")]
    CompositeCharacteristic(u32),
    #[error("extension degree must be at least 1, got {0}")]
    InvalidDegree(u32),
    #[error("matrix-ring side must be at least 1, got {0}")]
    InvalidSide(u32),
    #[error("alphabet of size {size} exceeds the supported maximum {max}")]
    DomainTooLarge { size: u64, max: u64 },
    #[error("operands live over different alphabets ({left} vs {right})")]
    FieldMismatch { left: String, right: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("shape mismatch: {0}")]
    ShapeError(String),
    #[error("operation needs a field alphabet, got {0}")]
    UnsupportedDomain(String),
    #[error("parse error: {0}")]
    Parse(String),
}
