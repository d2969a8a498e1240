use num_rational::BigRational;

use super::probability::StepProbability;
use super::report::{Engine, ExactMoments, MomentReport, Moments};
use crate::algebra::{g_master, Block, MultiRational, UniSeries};
use crate::error::{Error, Result};

/// Exact moments for one `p` at every modulus.
///
/// Substituting `π = (1−p, p)` for one variable block of the master
/// generating function weights each configuration by its probability; the
/// Euler operator on the other block then weights by `λ` (block `y`) or `μ`
/// (block `x`), and applying it twice by `λ²` or `μ²`. The moments at modulus
/// `T` are the `[zᵀ]` coefficients of the resulting univariate series.
#[derive(Clone, Debug)]
pub struct ExactEngine {
    p: StepProbability,
    total: UniSeries,
    lambda: [UniSeries; 2],
    mu: [UniSeries; 2],
}

/// Substitutes `π` for `fixed`, applies the `free`-block Euler operator once
/// and twice, and substitutes `π` for `free`.
fn moment_series(
    g: &MultiRational,
    pi: &(BigRational, BigRational),
    fixed: Block,
    free: Block,
) -> Result<[UniSeries; 2]> {
    let first = g.substitute_block(fixed, pi)?.euler(free);
    let second = first.euler(free);
    let at = |f: &MultiRational| f.substitute_block(free, pi)?.to_series();
    Ok([at(&first)?, at(&second)?])
}

impl ExactEngine {
    pub fn new(p: &StepProbability) -> Result<Self> {
        let g = g_master();
        let pi = p.pi();
        let total = g.evaluate(&pi, &pi)?;
        let lambda = moment_series(&g, &pi, Block::X, Block::Y)?;
        let mu = moment_series(&g, &pi, Block::Y, Block::X)?;
        Ok(Self { p: p.clone(), total, lambda, mu })
    }

    pub fn probability(&self) -> &StepProbability {
        &self.p
    }

    /// `G(π, π, z)`; its `[zᵀ]` is the total probability at modulus `T`.
    pub fn total_series(&self) -> &UniSeries {
        &self.total
    }

    /// `E_y G(π, y, z)|_{y=π}`.
    pub fn lambda_series(&self) -> &UniSeries {
        &self.lambda[0]
    }

    /// `E_x G(x, π, z)|_{x=π}`.
    pub fn mu_series(&self) -> &UniSeries {
        &self.mu[0]
    }

    pub fn moments(&self, modulus: u64) -> Result<MomentReport> {
        if modulus == 0 {
            return Err(Error::ZeroModulus);
        }
        let n = modulus as usize;
        let c = |s: &UniSeries| s.coefficient(n);
        Ok(self.report(modulus, [c(&self.lambda[0]), c(&self.lambda[1]), c(&self.mu[0]), c(&self.mu[1])]))
    }

    fn report(&self, modulus: u64, [l1, l2, m1, m2]: [BigRational; 4]) -> MomentReport {
        let var_lambda = &l2 - &l1 * &l1;
        let var_mu = &m2 - &m1 * &m1;
        MomentReport {
            engine: Engine::Exact,
            modulus,
            p: self.p.clone().into(),
            moments: Moments::Exact(ExactMoments { e_lambda: l1, var_lambda, e_mu: m1, var_mu }),
        }
    }

    /// Reports for `T = 1, 2, 3, …`, each computed incrementally from the
    /// previous coefficients.
    pub fn sweep(&self) -> impl Iterator<Item = MomentReport> + '_ {
        let mut streams = [
            self.lambda[0].stream(),
            self.lambda[1].stream(),
            self.mu[0].stream(),
            self.mu[1].stream(),
        ];
        for s in &mut streams {
            s.next(); // z⁰
        }
        (1u64..).map(move |t| {
            let coeffs = std::array::from_fn(|i| streams[i].next().expect("infinite stream"));
            self.report(t, coeffs)
        })
    }
}

/// `E[λ]`, `Var[λ]`, `E[μ]`, `Var[μ]` at modulus `T` by exact coefficient
/// extraction.
pub fn exact_moments(p: &StepProbability, modulus: u64) -> Result<MomentReport> {
    ExactEngine::new(p)?.moments(modulus)
}
