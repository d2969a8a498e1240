use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::probability::StepProbability;
use super::report::{Engine, ExactMoments, MomentReport, Moments};
use crate::error::{Error, Result};

/// Largest modulus the trajectory oracle accepts.
pub const BRUTE_FORCE_LIMIT: u64 = 14;

/// Outcome key: `(ones, twos, λ, μ)` of one trajectory.
type Outcome = (u32, u32, u64, u64);

/// Every step trajectory up to its first residue repeat, grouped by letter
/// counts and outcome. Independent of `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrajectoryTally {
    modulus: u64,
    counts: BTreeMap<Outcome, u64>,
}

/// Depth-first walk of the binary step tree, pruned at the first repeated
/// prefix-sum residue (at most `T` letters deep).
pub fn enumerate_trajectories(modulus: u64) -> Result<TrajectoryTally> {
    if modulus == 0 {
        return Err(Error::ZeroModulus);
    }
    if modulus > BRUTE_FORCE_LIMIT {
        return Err(Error::OracleScaleExceeded { modulus, limit: BRUTE_FORCE_LIMIT });
    }

    struct Walk {
        modulus: u64,
        visit: Vec<Option<u64>>,
        counts: BTreeMap<Outcome, u64>,
    }

    impl Walk {
        fn descend(&mut self, residue: u64, depth: u64, ones: u32, twos: u32) {
            for step in [1u64, 2] {
                let (o, t) = if step == 1 { (ones + 1, twos) } else { (ones, twos + 1) };
                let next = (residue + step) % self.modulus;
                match self.visit[next as usize] {
                    Some(first) => {
                        *self.counts.entry((o, t, first, depth + 1 - first)).or_insert(0) += 1;
                    }
                    None => {
                        self.visit[next as usize] = Some(depth + 1);
                        self.descend(next, depth + 1, o, t);
                        self.visit[next as usize] = None;
                    }
                }
            }
        }
    }

    let mut walk = Walk { modulus, visit: vec![None; modulus as usize], counts: BTreeMap::new() };
    walk.visit[0] = Some(0);
    walk.descend(0, 0, 0, 0);
    Ok(TrajectoryTally { modulus, counts: walk.counts })
}

impl TrajectoryTally {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Number of distinct trajectories.
    pub fn trajectory_count(&self) -> u64 {
        self.counts.values().sum()
    }

    fn weighted<F>(&self, p: &StepProbability, mut weight: F) -> BigRational
    where
        F: FnMut(u64, u64) -> u64,
    {
        let (q, pv) = p.pi();
        let mut total = BigRational::zero();
        for (&(ones, twos, lambda, mu), &n) in &self.counts {
            let w = weight(lambda, mu);
            if w == 0 {
                continue;
            }
            let prob = q.pow(ones as i32) * pv.pow(twos as i32);
            total += prob * BigRational::from_integer((n * w).into());
        }
        total
    }

    /// Total probability of all trajectories; exactly one.
    pub fn total_probability(&self, p: &StepProbability) -> BigRational {
        self.weighted(p, |_, _| 1)
    }

    pub fn moments(&self, p: &StepProbability) -> ExactMoments {
        let e_lambda = self.weighted(p, |l, _| l);
        let e_lambda2 = self.weighted(p, |l, _| l * l);
        let e_mu = self.weighted(p, |_, m| m);
        let e_mu2 = self.weighted(p, |_, m| m * m);
        ExactMoments {
            var_lambda: &e_lambda2 - &e_lambda * &e_lambda,
            var_mu: &e_mu2 - &e_mu * &e_mu,
            e_lambda,
            e_mu,
        }
    }

    pub fn report(&self, p: &StepProbability) -> MomentReport {
        debug_assert!(self.total_probability(p).is_one());
        MomentReport {
            engine: Engine::Brute,
            modulus: self.modulus,
            p: p.clone().into(),
            moments: Moments::Exact(self.moments(p)),
        }
    }
}

/// Exact moments by exhaustive trajectory enumeration; `T ≤ 14`.
pub fn brute_force(p: &StepProbability, modulus: u64) -> Result<MomentReport> {
    Ok(enumerate_trajectories(modulus)?.report(p))
}
