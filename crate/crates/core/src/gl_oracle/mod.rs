//! Brute-force oracle for fixed-point statistics of matrix groups over
//! finite fields.
//!
//! The other modules manipulate spectra and orbit counts as abstract rational
//! vectors; this one produces such vectors from an actual group, by explicit
//! enumeration, so the two can be compared. Pipeline:
//!
//! 1. [`FieldSpec`]/[`Field`]: arithmetic in F_(p^k) on element indices.
//! 2. [`FqMatrix`]: dense matrices with rank, inverse and a canonical byte
//!    encoding for dedup.
//! 3. [`group_closure`]: breadth-first enumeration of the subgroup generated
//!    by a list of matrices, plus [`standard_gl_generators`] for the full
//!    general linear group.
//! 4. [`MatrixGroup::fix_spectrum`], [`MatrixGroup::orbit_counts_burnside`]
//!    and [`MatrixGroup::orbit_counts_direct`]: the measured statistics,
//!    the latter two independent of each other.

pub mod field;
pub mod group;
pub mod matrix;

pub use field::{Field, FieldSpec, MAX_FIELD_ORDER};
pub use group::{fix_dimension, group_closure, standard_gl_generators, GroupInput, MatrixGroup};
pub use matrix::FqMatrix;
