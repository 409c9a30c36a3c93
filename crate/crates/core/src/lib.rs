//! Exact-arithmetic toolkit for slope stability of sheaves on fibrations:
//! intersection theory and cohomology on Hirzebruch surfaces and P²-bundles
//! over P¹, stability thresholds for polarizations `L + c·π*A`, moduli
//! stratification combinatorics, monads, and the canonical-form reduction of
//! the matrix data attached to semi-stable sheaves.
//!
//! Everything is computed over Q with no rounding. All operations are pure
//! functions on immutable values; the seeded sweeps in [`sweeps`] fan out
//! with rayon when the `parallel` feature (default) is enabled.

pub mod canonical;
pub mod cohom;
pub mod cox;
pub mod files;
pub mod geom;
pub mod matrix;
pub mod monad;
pub mod par;
pub mod rational;
pub mod stability;
pub mod strata;
pub mod sweeps;
pub mod variety;

pub use matrix::{MatrixError, RationalMatrix};
pub use rational::Rational;
pub use variety::Variety;
