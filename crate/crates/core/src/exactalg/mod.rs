//! Exact scalar and matrix arithmetic over the integers, the rationals and
//! prime fields.

mod field;
mod matrix;
pub mod smith;
pub mod sparse;

pub use field::{is_prime, p_valuation, Field, FieldKind, PrimeField, Rationals};
pub use matrix::{jordan_block, nilpotent_block_sizes, Matrix};
pub use smith::{
    smith_normal_form, smith_normal_form_sparse, smith_normal_form_with_transforms, IntMatrix, SmithForm,
    SparseIntMatrix,
};
pub use sparse::SparseVec;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("{0} is not a prime below 2^32")]
    NotPrime(u64),
    #[error("unknown coefficient field `{0}` (expected Q or F<p>)")]
    UnknownField(String),
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("operator is not nilpotent: its {bound}-th power is nonzero")]
    NotNilpotent { bound: usize },
}
