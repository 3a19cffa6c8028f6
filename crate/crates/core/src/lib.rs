//! Exact-arithmetic models for the oscillator group, its quarter-turn
//! lattice families, and the resulting four-dimensional solvmanifolds.
//!
//! Everything is computed over arbitrary-precision rationals: group and
//! lattice arithmetic, Chevalley-Eilenberg cohomology, solvmanifold Betti
//! numbers through deck-group invariants, minimal models, abelianization
//! invariants, and complex/symplectic structure tests.

pub mod complex;
pub mod exterior;
pub mod fp;
pub mod geometry;
pub mod lie;
pub mod matrix;
pub mod oscillator;
pub mod poly;
pub mod rational;
pub mod topology;
