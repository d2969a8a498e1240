//! Exact computer algebra over `Q` in the closed variable set
//! `(x₁, x₂, y₁, y₂, z)`.
//!
//! [`MultiPoly`] is a sparse polynomial keyed by fixed-arity exponent vectors,
//! [`MultiRational`] a quotient of two of them (never reduced, compared by
//! cross-multiplication), and [`UniSeries`] a rational power series in `z`
//! whose coefficients are produced by the denominator recurrence.

pub mod gf;
mod poly;
mod rational;
mod series;

pub use gf::{g_master, g_master_sum, g_omega};
pub use poly::{Block, Exponents, MultiPoly, Var};
pub use rational::MultiRational;
pub use series::{CoefficientStream, UniSeries};

use num_bigint::BigInt;
use num_rational::BigRational;

/// Exact rational from a small fraction.
pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}
