//! Seeded Monte Carlo estimation of the moments.
//!
//! Samples are split into fixed-size chunks; chunk `i` draws from the ChaCha
//! stream `i` of the run seed, and chunk results are integer sums combined by
//! addition. The output therefore depends only on `(seed, samples, T, p,
//! chunk_size)`, never on the number of workers or on scheduling.

use rand::distributions::{Bernoulli, Distribution};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::probability::Probability;
use super::report::{Engine, MomentReport, Moments, SampledMoments};
use crate::decimation::PeriodDetector;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MonteCarloConfig {
    pub samples: u64,
    pub seed: u64,
    /// Worker threads; `0` uses the global rayon pool.
    pub workers: usize,
    pub chunk_size: u64,
}

impl MonteCarloConfig {
    pub const DEFAULT_CHUNK_SIZE: u64 = 4096;

    pub fn new(samples: u64, seed: u64) -> Self {
        Self { samples, seed, workers: 0, chunk_size: Self::DEFAULT_CHUNK_SIZE }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
struct Sums {
    n: u128,
    lambda: u128,
    lambda2: u128,
    mu: u128,
    mu2: u128,
}

impl std::ops::Add for Sums {
    type Output = Sums;

    fn add(self, o: Sums) -> Sums {
        Sums {
            n: self.n + o.n,
            lambda: self.lambda + o.lambda,
            lambda2: self.lambda2 + o.lambda2,
            mu: self.mu + o.mu,
            mu2: self.mu2 + o.mu2,
        }
    }
}

fn run_chunk(index: u64, count: u64, seed: u64, modulus: u64, law: Bernoulli) -> Sums {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let mut detector = PeriodDetector::new(modulus);
    let mut sums = Sums::default();
    for _ in 0..count {
        let letters = std::iter::repeat_with(|| if law.sample(&mut rng) { 2 } else { 1 });
        let pair = detector.detect(letters).expect("an infinite source always repeats");
        let (l, m) = (pair.lambda as u128, pair.mu as u128);
        sums = sums + Sums { n: 1, lambda: l, lambda2: l * l, mu: m, mu2: m * m };
    }
    sums
}

/// Mean, unbiased variance and standard error of the mean from exact sums.
fn statistics(n: u128, sum: u128, sum_sq: u128) -> (f64, Option<f64>, Option<f64>) {
    let mean = sum as f64 / n as f64;
    if n < 2 {
        return (mean, None, None);
    }
    let var = (n * sum_sq - sum * sum) as f64 / (n * (n - 1)) as f64;
    (mean, Some(var), Some((var / n as f64).sqrt()))
}

/// Samples `config.samples` i.i.d. step words (`Pr[2] = p`) and reports the
/// sample moments of `λ` and `μ` modulo `modulus`.
pub fn monte_carlo(p: &Probability, modulus: u64, config: &MonteCarloConfig) -> Result<MomentReport> {
    if config.samples == 0 {
        return Err(Error::NoSamples);
    }
    if modulus == 0 {
        return Err(Error::ZeroModulus);
    }
    let law = match p.small_ratio() {
        Some((num, den)) => Bernoulli::from_ratio(num, den),
        None => Bernoulli::new(p.to_f64()),
    }
    .map_err(|e| Error::ProbabilityOutOfRange(format!("{p}: {e}")))?;

    let chunk = config.chunk_size.max(1);
    let chunks = config.samples.div_ceil(chunk);
    let job = || {
        (0..chunks)
            .into_par_iter()
            .map(|i| {
                let count = chunk.min(config.samples - i * chunk);
                run_chunk(i, count, config.seed, modulus, law)
            })
            .reduce(Sums::default, |a, b| a + b)
    };
    let sums = if config.workers == 0 {
        job()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(config.workers)
            .build()
            .map_err(|e| Error::WorkerPool(e.to_string()))?
            .install(job)
    };

    let (e_lambda, var_lambda, se_lambda) = statistics(sums.n, sums.lambda, sums.lambda2);
    let (e_mu, var_mu, se_mu) = statistics(sums.n, sums.mu, sums.mu2);
    Ok(MomentReport {
        engine: Engine::MonteCarlo,
        modulus,
        p: p.clone(),
        moments: Moments::Sampled(SampledMoments {
            samples: config.samples,
            e_lambda,
            var_lambda,
            e_mu,
            var_mu,
            se_lambda,
            se_mu,
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moments::StepProbability;

    fn half() -> Probability {
        StepProbability::from_ratio(1, 2).unwrap().into()
    }

    #[test]
    fn rejects_zero_samples() {
        assert_eq!(monte_carlo(&half(), 10, &MonteCarloConfig::new(0, 1)).unwrap_err(), Error::NoSamples);
    }

    #[test]
    fn single_sample_has_no_variance() {
        let r = monte_carlo(&half(), 10, &MonteCarloConfig::new(1, 7)).unwrap();
        let m = r.sampled().unwrap();
        assert_eq!((m.var_lambda, m.var_mu, m.se_lambda, m.se_mu), (None, None, None, None));
    }

    #[test]
    fn deterministic_and_worker_independent() {
        let base = MonteCarloConfig { samples: 20_000, seed: 42, workers: 1, chunk_size: 1000 };
        let a = monte_carlo(&half(), 25, &base).unwrap();
        let b = monte_carlo(&half(), 25, &base).unwrap();
        let c = monte_carlo(&half(), 25, &base.with_workers(4)).unwrap();
        assert_eq!(a.to_json().to_string(), b.to_json().to_string());
        assert_eq!(a.to_json().to_string(), c.to_json().to_string());
        let other_seed = monte_carlo(&half(), 25, &MonteCarloConfig { seed: 43, ..base }).unwrap();
        assert_ne!(a, other_seed);
    }

    #[test]
    fn float_probability() {
        let p = Probability::float(0.25).unwrap();
        let r = monte_carlo(&p, 12, &MonteCarloConfig::new(5000, 3)).unwrap();
        assert_eq!(r.to_json()["p"], "0.25");
        let m = r.sampled().unwrap();
        assert!(m.e_mu > 0.0 && m.e_mu <= 12.0);
    }

    #[test]
    fn statistics_exact_sums() {
        // samples 1, 2, 3
        let (mean, var, se) = statistics(3, 6, 14);
        assert_eq!(mean, 2.0);
        assert_eq!(var, Some(1.0));
        assert!((se.unwrap() - (1.0f64 / 3.0).sqrt()).abs() < 1e-15);
    }
}
