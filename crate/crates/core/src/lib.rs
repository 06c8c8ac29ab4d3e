//! Exact computation of fixed-point statistics for matrix groups over
//! finite fields, through the Hopf algebra of the braided line.
//!
//! A subgroup G of GL(d, F_q) has two natural summaries: the probabilities
//! `P_i` that a random element fixes pointwise exactly an i-dimensional
//! subspace, and the counts `L_j` of G-orbits on ordered linearly
//! independent j-tuples of vectors. The two determine each other through a
//! triangular q-deformed transform; packaging the generating functions as
//! elements of the braided line turns that transform into the operator
//! `T = (φ ⊗ S) ∘ Δ`, whose inverse, factorizations and duality come for
//! free from the Hopf structure.
//!
//! Module map:
//!
//! * [`rational`] and [`qcalc`]: exact rationals and q-combinatorics.
//! * [`braided_line`]: the truncated braided line, its coproduct, braiding,
//!   antipode, the operator `T`, the Jackson derivative and braided
//!   exponentials.
//! * [`orbit_transform`]: `P <-> L` conversions, each in two independent
//!   routes, plus spectrum validation.
//! * [`gl_oracle`]: brute-force finite fields, matrix groups and orbit
//!   counting, the ground truth the algebra is tested against.
//! * [`checks`]: the named identity suite shared by tests and the CLI.
//!
//! Everything is exact: rationals of arbitrary size, no floats, no rounding,
//! and degenerate q values (roots of unity that zero a denominator) are
//! rejected as errors rather than approximated.

#![forbid(unsafe_code)]

pub mod braided_line;
pub mod checks;
pub mod error;
pub mod gl_oracle;
pub mod orbit_transform;
pub mod qcalc;
pub mod rational;

pub use error::{Error, Result};
pub use qcalc::QParam;
pub use rational::Rat;
