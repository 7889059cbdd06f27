//! Exact arithmetic: prime and extension fields, Z/p^λ, univariate and
//! bivariate polynomials, resultants and factorization.

pub mod bipoly;
pub mod factor;
pub mod field;
pub mod resultant;
pub mod upoly;

pub use bipoly::{BiPoly, Exponent};
pub use factor::{distinct_point_count, factor, Factorization, FACTOR_SEED};
pub use field::{ext_field, is_prime, Embedding, ExtField, Field, ModRing, PrimeField, Ring};
pub use resultant::resultant_y;
pub use upoly::UniPoly;
