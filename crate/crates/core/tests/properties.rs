use num_integer::Integer;
use proptest::prelude::*;

use decim::moments::{brute_force, exact_moments, StepProbability};
use decim::wordclass::{classify, CyclicPart, WordClass};
use decim::{lambda_mu, lambda_mu_letters, scale_word, simulate_orbit, StepWord};

fn word_strategy(min_len: usize, max_len: usize) -> impl Strategy<Value = StepWord> {
    prop::collection::vec(1u64..=2, min_len..=max_len).prop_map(|s| StepWord::new(s).unwrap())
}

proptest! {
    #[test]
    fn orbit_matches_kernel_from_every_state(w in word_strategy(40, 60), t in 1u64..=40) {
        let pair = lambda_mu(&w, t).unwrap();
        for s0 in 0..t {
            prop_assert_eq!(simulate_orbit(t, s0, &w).unwrap().period_pair, pair);
        }
    }

    #[test]
    fn pigeonhole(w in word_strategy(30, 30), t in 1u64..=30) {
        let pair = lambda_mu(&w, t).unwrap();
        prop_assert!(pair.mu >= 1);
        prop_assert!(pair.lambda + pair.mu <= t);
    }

    #[test]
    fn scaling_by_a_unit(w in word_strategy(50, 50), t in 1u64..=50, q in 1u64..=12) {
        prop_assume!(t.gcd(&q) == 1);
        let scaled = scale_word(&w, q).unwrap();
        prop_assert_eq!(lambda_mu(&scaled, t).unwrap(), lambda_mu(&w, t).unwrap());
    }

    /// With a preperiod, dropping the first letter shortens it by one.
    #[test]
    fn dropping_a_prefix_letter(w in word_strategy(12, 12), t in 1u64..=10) {
        let pair = lambda_mu(&w, t).unwrap();
        prop_assume!(pair.lambda >= 1);
        let tail: Vec<u64> = w.letters().skip(1).collect();
        let shifted = lambda_mu(&StepWord::new(tail).unwrap(), t).unwrap();
        prop_assert_eq!(shifted.lambda, pair.lambda - 1);
        prop_assert_eq!(shifted.mu, pair.mu);
    }

    /// Without a preperiod, rotating the cyclic part keeps `(0, μ)`.
    #[test]
    fn rotating_a_pure_cycle(w in word_strategy(10, 10), t in 1u64..=10) {
        let pair = lambda_mu(&w, t).unwrap();
        prop_assume!(pair.lambda == 0);
        let cycle = StepWord::new(w.steps()[..pair.mu as usize].to_vec()).unwrap();
        let mut rotated = cycle.clone();
        for _ in 0..cycle.len() {
            rotated = rotated.rotate_left();
            prop_assert_eq!(lambda_mu_letters(rotated.cycle(), t, 1).unwrap(), pair);
        }
    }

    #[test]
    fn classes_partition(w in word_strategy(1, 16)) {
        let a = CyclicPart::new(w.clone()).unwrap();
        let hits = WordClass::ALL.iter().filter(|c| c.matches(w.steps())).count();
        prop_assert_eq!(hits, 1);
        prop_assert!(classify(&a).matches(w.steps()));
    }

    #[test]
    fn moments_are_consistent(n in 1i64..=9, t in 1u64..=9) {
        let p = StepProbability::from_ratio(n, 10).unwrap();
        let exact = exact_moments(&p, t).unwrap();
        let brute = brute_force(&p, t).unwrap();
        prop_assert_eq!(exact.exact(), brute.exact());
        let m = exact.exact().unwrap();
        let tr = num_rational::BigRational::from_integer(t.into());
        prop_assert!(m.e_mu <= tr);
        prop_assert!(m.e_lambda < tr);
        prop_assert!(m.var_lambda >= num_rational::BigRational::from_integer(0.into()));
        prop_assert!(m.var_mu >= num_rational::BigRational::from_integer(0.into()));
    }
}
