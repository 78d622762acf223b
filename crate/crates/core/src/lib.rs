//! Finite unital 3-fields: ternary addition, binary multiplication and no
//! zero element.
//!
//! The crate covers the prime fields `TF(n)`, the extensions `F0(n)` of the
//! trivial field `{1}` built from truncated GF(2) polynomials, multivariate
//! and Cartesian constructions, rings of pairs and Q-rings, unitization of
//! Q-algebras, subfields of `F0(n)`, and the automorphism groups
//! `Aut F0(n)`.

pub mod autgroup;
pub mod error;
pub mod fields;
pub mod poly2;
pub mod products;
pub mod qstruct;
pub mod structure;
pub mod subfields;
pub mod verify;

pub use error::{Error, Result};
