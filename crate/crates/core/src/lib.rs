//! Statistics of invertible excitations in finite excitation models.
//!
//! A model is a finite configuration group `A`, a set of local operators `S`
//! with boundaries in `A` and finite supports, and the induced locality
//! structure. Its statistics group `T` is the quotient of closed, locally
//! trivial phase expressions by the lattice of locality identities.

pub mod abelian;
pub mod complex;
mod error;
pub mod expr;
pub mod model;
pub mod proctools;
pub mod statistics;

pub use abelian::{FiniteAbelianGroup, GroupElement};
pub use complex::{
    builtin, builtin_from_spec, Builtin, EmbeddedGraph, Geometry, SimplicialComplex,
};
pub use error::{Error, Result};
pub use expr::{expand_theta, parse_process, Expression, ProcessWord};
pub use model::{ExcitationModel, Operator};
pub use proctools::{
    emit_dot, reconstruct_process, simplify_randomly, Simplified, SimplifyOptions,
};
pub use statistics::{
    identity_generators, GroupInvariants, IdentityFamily, Statistics, StatisticsResult,
    StatsOptions,
};
