//! Truncated p-typical Witt vectors.

pub mod intpoly;
pub mod iso;
pub mod laws;
pub mod ring;
pub mod vector;

pub use intpoly::IntPoly;
pub use iso::{galois_to_witt, witt_to_galois};
pub use laws::{eval_polys, ghost_poly, WittLaws};
pub use ring::{CoeffRing, FqPolyRing, IntPolyRing, Integers};
pub use vector::{WittOps, WittVector};
