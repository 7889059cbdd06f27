//! Zeta functions of curves over prime fields.
//!
//! Given an absolutely irreducible `F(x, y)` over F_p, the crate computes the
//! zeta function of the nonsingular projective curve with the function field
//! of `F`. Point counts of the plane model come from a p-adic trace formula
//! over the Newton polygon of `F` (see [`trace`]); the difference between the
//! plane model and its normalization is computed by resolving the singular
//! points (see [`corrections`]); [`zeta`] assembles the result.

pub mod algebra;
pub mod cli;
pub mod corrections;
pub mod naive;
pub mod error;
pub mod polytope;
pub mod trace;
pub mod zeta;

pub use error::{Error, Result};
