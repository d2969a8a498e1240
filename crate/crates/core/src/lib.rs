//! Preperiod and period of self-decimated generators.
//!
//! A generator with `T` states and a full-cycle transition function, when
//! decimated by steps drawn from `{1, 2}` (or `{q, 2q}`), walks an eventually
//! periodic orbit. This crate computes the preperiod `λ` and period `μ` of
//! that orbit and their moments under random steps by four independent
//! routes:
//!
//! * [`moments::closed_form`]: the large-`T` asymptotic expressions,
//! * [`moments::exact_moments`]: exact coefficient extraction from the
//!   multivariate generating function in [`algebra`],
//! * [`moments::brute_force`]: exhaustive trajectory enumeration,
//! * [`moments::monte_carlo`]: seeded, worker-count independent sampling.
//!
//! [`wordclass`] provides the combinatorial oracle for the generating
//! function and [`lfsr`] reproduces the deterministic LFSR-driven period.

pub mod algebra;
pub mod decimation;
mod error;
pub mod lfsr;
pub mod moments;
pub mod wordclass;

pub use decimation::{
    lambda_mu, lambda_mu_letters, scale_word, simulate_orbit, state_driven_word, GeneratorRun,
    PeriodPair, StepWord,
};
pub use error::{Error, Result};
