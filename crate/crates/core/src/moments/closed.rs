use num_rational::BigRational;
use num_traits::One;

use super::probability::StepProbability;
use super::report::{Engine, ExactMoments, MomentReport, Moments};
use crate::error::{Error, Result};

/// Leading asymptotic terms as `T → ∞`:
///
/// ```text
/// E[λ]   = p / ((1−p)(1+p)²)              E[μ]   = T / (1+p)
/// Var[λ] = (p+p³+p⁴) / ((1−p)²(1+p)⁴)     Var[μ] = T·p(1−p) / (1+p)³
/// ```
///
/// The `O(pᵀT)` and `O(pᵀT²)` remainders are not included.
pub fn closed_form(p: &StepProbability, modulus: u64) -> Result<MomentReport> {
    if modulus == 0 {
        return Err(Error::ZeroModulus);
    }
    let one = BigRational::one();
    let p_val = p.p().clone();
    let q = p.complement();
    let s = &one + &p_val;
    let t = BigRational::from_integer(modulus.into());
    let p2 = &p_val * &p_val;

    let e_lambda = &p_val / (&q * &s * &s);
    let var_lambda = (&p_val + &p2 * &p_val + &p2 * &p2) / (&q * &q * s.pow(4));
    let e_mu = &t / &s;
    let var_mu = &t * &p_val * &q / s.pow(3);

    Ok(MomentReport {
        engine: Engine::Closed,
        modulus,
        p: p.clone().into(),
        moments: Moments::Exact(ExactMoments { e_lambda, var_lambda, e_mu, var_mu }),
    })
}
