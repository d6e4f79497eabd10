//! Truncated Witt vectors over finite fields, Frobenius-semilinear modules
//! over Galois rings, and the Frobenius-stable part of Witt vector
//! cohomology for small projective varieties, checked against point counts.

pub mod arith;
pub mod cohomology;
pub mod congruence;
pub mod corpus;
pub mod error;
pub mod field;
pub mod galois;
pub mod linalg;
pub mod mpoly;
pub mod par;
pub mod pointcount;
pub mod selftest;
pub mod semilinear;
pub mod witt;

pub use error::{Error, Result};
