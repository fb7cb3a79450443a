//! Truncated multivariate power series over exact rationals.

pub mod json;
mod lseries;
mod pseries;
pub mod rational;
mod vars;

pub use lseries::LSeries;
pub use pseries::{PSeries, Sign};
pub use rational::Rational;
pub use vars::{Monomial, TruncationPolicy, Var, VarTable};
