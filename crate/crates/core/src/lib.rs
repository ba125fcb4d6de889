//! Exact truth-value algebra of type-2 fuzzy sets.
//!
//! Membership functions `I -> I` are piecewise linear with explicit one-sided
//! limits at breakpoints and exact rational coordinates. On top of that
//! representation the crate provides envelopes, the convolutions ⊓ and ⊔,
//! the lattice-ordered t-norm ✶ on normal convex functions, the interval
//! operation ⊛, scalar t-norms, and a seeded property-suite engine.

pub mod cli;
pub mod conv;
pub mod doc;
pub mod error;
pub mod interval;
pub mod pwl;
pub mod rational;
pub mod report;
pub mod tnorm;
pub mod verify;

pub use error::{AlgebraError, Result};
pub use interval::Interval;
pub use pwl::PiecewiseFn;
pub use rational::Rational;
pub use tnorm::ScalarTNorm;
