//! Exact integer linear algebra over sparse matrices.
//!
//! The central routine is [`snf`], a Smith normal form `U * M * V = D` with
//! arbitrary-precision entries, built for large sparse matrices whose entries
//! are mostly `0` and `±1`. On top of it sit [`solve_integer`],
//! [`kernel_basis`], [`quotient_invariants`] and the canonical
//! [`hermite_basis`] used to compare lattices.

mod dense;
mod error;
mod integer;
mod lattice;
mod snf;
mod sparse;

pub use error::{LinalgError, Result};
pub use integer::Integer;
pub use lattice::{
    determinant, hermite_basis, kernel_basis, quotient_invariants, same_lattice, solve_integer,
    solve_with,
};
pub use snf::{
    snf, snf_of_span, snf_with, ColTransform, Limits, RowTransform, SnfOptions, SnfResult,
};
pub use sparse::{SparseIntMatrix, SparseVec};
