//! Exact genus-zero spectral curves of the Hermitian one-matrix model.
//!
//! Everything is computed as truncated formal power series with rational
//! coefficients: the renormalized couplings, the thin and fat special
//! deformations, the fat resolvent and its one-cut form.

pub mod couplings;
pub mod error;
pub mod fat;
pub mod lagrange;
pub mod onecut;
pub mod sequences;
pub mod series;
pub mod suites;
pub mod thin;

pub use error::{Error, Result};
pub use series::{LSeries, Monomial, PSeries, Rational, Sign, TruncationPolicy, Var, VarTable};
