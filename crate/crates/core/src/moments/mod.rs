//! Moments of the preperiod and period under i.i.d. random steps.
//!
//! Steps are `2` with probability `p` and `1` with probability `1 − p`. Four
//! engines compute `E[λ]`, `Var[λ]`, `E[μ]`, `Var[μ]`:
//!
//! | engine | arithmetic | scope |
//! |---|---|---|
//! | [`closed_form`] | exact | leading asymptotic terms only |
//! | [`exact_moments`] | exact | every `T`, by `[zᵀ]` extraction |
//! | [`brute_force`] | exact | `T ≤ 14`, by trajectory enumeration |
//! | [`monte_carlo`] | float | any `T`, with standard errors |

mod brute;
mod closed;
mod exact;
mod montecarlo;
mod probability;
mod report;

pub use brute::{brute_force, enumerate_trajectories, TrajectoryTally, BRUTE_FORCE_LIMIT};
pub use closed::closed_form;
pub use exact::{exact_moments, ExactEngine};
pub use montecarlo::{monte_carlo, MonteCarloConfig};
pub use probability::{Probability, StepProbability};
pub use report::{Engine, ExactMoments, MomentReport, Moments, SampledMoments, CSV_HEADER};
