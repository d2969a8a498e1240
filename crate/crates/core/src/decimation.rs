//! Step words, the `(λ, μ)` kernel and the self-decimated state orbit.
//!
//! The state set is `Z/T` and the full-cycle transition is the successor map
//! `S ↦ S + 1 (mod T)`, so decimating by `d(S)` steps moves the state by
//! `d(S)` modulo `T`. All period quantities depend only on prefix sums of the
//! step word modulo `T`.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::error::{Error, Result};

/// A finite word of decimation steps, each equal to `base` or `2 * base`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StepWord {
    base: u64,
    steps: Vec<u64>,
}

impl StepWord {
    /// Builds a word over `{1, 2}`.
    pub fn new(steps: Vec<u64>) -> Result<Self> {
        Self::with_base(steps, 1)
    }

    /// Builds a word over `{base, 2 * base}`.
    pub fn with_base(steps: Vec<u64>, base: u64) -> Result<Self> {
        if base == 0 {
            return Err(Error::InvalidLetter { letter: 0, base });
        }
        if let Some(&letter) = steps.iter().find(|&&s| s != base && s != 2 * base) {
            return Err(Error::InvalidLetter { letter, base });
        }
        Ok(Self { base, steps })
    }

    pub fn empty() -> Self {
        Self { base: 1, steps: Vec::new() }
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn steps(&self) -> &[u64] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Sum of the letters, `w(a)`.
    pub fn weight(&self) -> u64 {
        self.steps.iter().sum()
    }

    /// Number of `base` letters and `2 * base` letters.
    pub fn letter_counts(&self) -> (usize, usize) {
        let ones = self.steps.iter().filter(|&&s| s == self.base).count();
        (ones, self.steps.len() - ones)
    }

    pub fn letters(&self) -> impl Iterator<Item = u64> + Clone + '_ {
        self.steps.iter().copied()
    }

    /// The word repeated forever.
    pub fn cycle(&self) -> impl Iterator<Item = u64> + Clone + '_ {
        self.steps.iter().copied().cycle()
    }

    /// Concatenation `self · other`; both words must share a base.
    pub fn concat(&self, other: &StepWord) -> Result<StepWord> {
        let base = if self.is_empty() { other.base } else { self.base };
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&other.steps);
        StepWord::with_base(steps, base)
    }

    /// Rotation by one letter: `a₀a₁…a_{n-1}` becomes `a₁…a_{n-1}a₀`.
    pub fn rotate_left(&self) -> StepWord {
        let mut steps = self.steps.clone();
        if !steps.is_empty() {
            steps.rotate_left(1);
        }
        StepWord { base: self.base, steps }
    }

    /// Prepends a letter.
    pub(crate) fn prepended(&self, letter: u64) -> StepWord {
        let mut steps = Vec::with_capacity(self.steps.len() + 1);
        steps.push(letter);
        steps.extend_from_slice(&self.steps);
        StepWord { base: self.base, steps }
    }
}

/// Base-1 words print as digit strings (`2212221`), scaled words as
/// comma-separated integers (`6,6,3`).
impl fmt::Display for StepWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.base == 1 {
            for s in &self.steps {
                write!(f, "{s}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.steps.iter().map(u64::to_string).collect();
            f.write_str(&parts.join(","))
        }
    }
}

impl FromStr for StepWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.contains(',') {
            let steps = s
                .split(',')
                .map(|p| p.trim().parse::<u64>().map_err(|e| Error::Parse(format!("{p:?}: {e}"))))
                .collect::<Result<Vec<_>>>()?;
            let lo = *steps.iter().min().expect("split yields at least one part");
            let hi = *steps.iter().max().expect("split yields at least one part");
            // an all-equal word is read as all-`base` letters
            if hi != lo && hi != 2 * lo {
                return Err(Error::Parse(format!("letters {lo} and {hi} do not form {{q, 2q}}")));
            }
            StepWord::with_base(steps, lo)
        } else {
            let steps = s
                .chars()
                .map(|c| match c {
                    '1' => Ok(1),
                    '2' => Ok(2),
                    _ => Err(Error::Parse(format!("unexpected letter {c:?} in step word"))),
                })
                .collect::<Result<Vec<_>>>()?;
            StepWord::new(steps)
        }
    }
}

/// Preperiod and period of a step word modulo `T`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct PeriodPair {
    pub lambda: u64,
    pub mu: u64,
}

impl PeriodPair {
    pub fn new(lambda: u64, mu: u64) -> Self {
        Self { lambda, mu }
    }
}

/// Reusable first-visit table for prefix-sum residues.
///
/// Index is the residue, value is the first time it was reached.
#[derive(Debug, Clone)]
pub(crate) struct PeriodDetector {
    first_visit: Vec<usize>,
}

impl PeriodDetector {
    const UNSEEN: usize = usize::MAX;

    pub(crate) fn new(modulus: u64) -> Self {
        Self { first_visit: vec![Self::UNSEEN; modulus as usize] }
    }

    /// Runs the first-repeat search. The caller has validated the modulus,
    /// coprimality and letters.
    pub(crate) fn detect<I>(&mut self, letters: I) -> Result<PeriodPair>
    where
        I: IntoIterator<Item = u64>,
    {
        let modulus = self.first_visit.len() as u64;
        self.first_visit.fill(Self::UNSEEN);
        let mut residue = 0u64;
        self.first_visit[0] = 0;
        let mut consumed = 0usize;
        for letter in letters {
            consumed += 1;
            residue = (residue + letter % modulus) % modulus;
            let seen = self.first_visit[residue as usize];
            if seen != Self::UNSEEN {
                return Ok(PeriodPair::new(seen as u64, (consumed - seen) as u64));
            }
            self.first_visit[residue as usize] = consumed;
        }
        if consumed == 0 {
            Err(Error::EmptyWord)
        } else {
            Err(Error::InsufficientWord { len: consumed, modulus })
        }
    }
}

fn check_modulus(modulus: u64, base: u64) -> Result<()> {
    if modulus == 0 {
        return Err(Error::ZeroModulus);
    }
    if base.gcd(&modulus) != 1 {
        return Err(Error::ScalingNotCoprime { base, modulus });
    }
    Ok(())
}

/// `(λ, μ)` of a finite word modulo `modulus`.
///
/// `λ` is the first index whose prefix-sum residue recurs and `μ` the gap to
/// its recurrence; equivalently `modulus` divides `s_λ + … + s_{λ+μ-1}` and no
/// earlier window sum. The word must be long enough to reach the repeat,
/// which at most `modulus` letters always do.
pub fn lambda_mu(word: &StepWord, modulus: u64) -> Result<PeriodPair> {
    lambda_mu_letters(word.letters(), modulus, word.base())
}

/// [`lambda_mu`] over an arbitrary (possibly lazy or infinite) letter source.
pub fn lambda_mu_letters<I>(letters: I, modulus: u64, base: u64) -> Result<PeriodPair>
where
    I: IntoIterator<Item = u64>,
{
    check_modulus(modulus, base)?;
    let mut letters = letters.into_iter().peekable();
    let Some(&first) = letters.peek() else {
        return Err(Error::EmptyWord);
    };
    if modulus == 1 {
        validate_letter(first, base)?;
        return Ok(PeriodPair::new(0, 1));
    }
    let mut invalid = None;
    let checked = letters.map_while(|l| match validate_letter(l, base) {
        Ok(()) => Some(l),
        Err(e) => {
            invalid = Some(e);
            None
        }
    });
    let result = PeriodDetector::new(modulus).detect(checked);
    match invalid {
        Some(e) => Err(e),
        None => result,
    }
}

fn validate_letter(letter: u64, base: u64) -> Result<()> {
    if letter == base || letter == 2 * base {
        Ok(())
    } else {
        Err(Error::InvalidLetter { letter, base })
    }
}

/// The state orbit of a self-decimated generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorRun {
    pub modulus: u64,
    pub initial_state: u64,
    /// Visited states, ending with the first repeated state.
    pub states: Vec<u64>,
    pub period_pair: PeriodPair,
}

/// Iterates `S_{t+1} = S_t + s_t (mod T)` from `initial_state` until a state
/// repeats and reports the orbit's preperiod and period.
pub fn simulate_orbit(modulus: u64, initial_state: u64, word: &StepWord) -> Result<GeneratorRun> {
    check_modulus(modulus, word.base())?;
    if initial_state >= modulus {
        return Err(Error::StateOutOfRange { state: initial_state, modulus });
    }
    if word.is_empty() {
        return Err(Error::EmptyWord);
    }
    let mut first_visit: Vec<Option<usize>> = vec![None; modulus as usize];
    let mut states = vec![initial_state];
    first_visit[initial_state as usize] = Some(0);
    let mut state = initial_state;
    for (t, step) in word.letters().enumerate() {
        state = (state + step) % modulus;
        states.push(state);
        if let Some(seen) = first_visit[state as usize] {
            return Ok(GeneratorRun {
                modulus,
                initial_state,
                states,
                period_pair: PeriodPair::new(seen as u64, (t + 1 - seen) as u64),
            });
        }
        first_visit[state as usize] = Some(t + 1);
    }
    Err(Error::InsufficientWord { len: word.len(), modulus })
}

/// Emits the step word `s_t = d(S_t)` produced along the orbit
/// `S_{t+1} = S_t + d(S_t) (mod T)`, truncated at `max_len` letters.
pub fn state_driven_word(
    modulus: u64,
    decimation: &[u64],
    initial_state: u64,
    max_len: usize,
) -> Result<StepWord> {
    if modulus == 0 {
        return Err(Error::ZeroModulus);
    }
    if decimation.len() as u64 != modulus {
        return Err(Error::TableSize { len: decimation.len(), modulus });
    }
    if initial_state >= modulus {
        return Err(Error::StateOutOfRange { state: initial_state, modulus });
    }
    if (max_len as u64) < modulus {
        return Err(Error::WordTooShort { max_len, modulus });
    }
    let mut state = initial_state;
    let mut steps = Vec::with_capacity(max_len);
    for _ in 0..max_len {
        let step = decimation[state as usize];
        steps.push(step);
        state = (state + step) % modulus;
    }
    StepWord::new(steps)
}

/// Multiplies every letter by `q`, mapping `{1, 2}` onto `{q, 2q}`.
pub fn scale_word(word: &StepWord, q: u64) -> Result<StepWord> {
    StepWord::with_base(word.steps.iter().map(|s| s * q).collect(), word.base * q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> StepWord {
        s.parse().unwrap()
    }

    #[test]
    fn worked_example() {
        let s = w("2212221");
        assert_eq!(lambda_mu(&s, 8).unwrap(), PeriodPair::new(2, 5));
        assert_eq!(lambda_mu(&s, 1).unwrap(), PeriodPair::new(0, 1));
        assert_eq!(lambda_mu(&s, 2).unwrap(), PeriodPair::new(0, 1));
        assert_eq!(lambda_mu(&w("2"), 1).unwrap(), PeriodPair::new(0, 1));
    }

    #[test]
    fn all_ones_hits_every_residue() {
        for t in 1..30u64 {
            let ones = StepWord::new(vec![1; t as usize]).unwrap();
            assert_eq!(lambda_mu(&ones, t).unwrap(), PeriodPair::new(0, t));
        }
    }

    #[test]
    fn one_two_mod_two() {
        assert_eq!(lambda_mu(&w("12"), 2).unwrap(), PeriodPair::new(1, 1));
    }

    #[test]
    fn errors() {
        assert_eq!(lambda_mu(&StepWord::empty(), 5), Err(Error::EmptyWord));
        assert_eq!(lambda_mu(&StepWord::empty(), 1), Err(Error::EmptyWord));
        assert!(matches!(lambda_mu(&w("11"), 5), Err(Error::InsufficientWord { len: 2, modulus: 5 })));
        let scaled = scale_word(&w("12"), 3).unwrap();
        assert_eq!(
            lambda_mu(&scaled, 9),
            Err(Error::ScalingNotCoprime { base: 3, modulus: 9 })
        );
        assert_eq!(lambda_mu(&w("1"), 0), Err(Error::ZeroModulus));
        assert!(StepWord::new(vec![1, 3]).is_err());
        assert!(matches!(
            lambda_mu_letters([1, 5, 1], 7, 1),
            Err(Error::InvalidLetter { letter: 5, base: 1 })
        ));
    }

    #[test]
    fn lazy_cyclic_source() {
        // "21" repeated: residues mod 7 are 0,2,3,5,6,1,2 → repeat at j=6 of i=1
        let p = lambda_mu_letters([2u64, 1].into_iter().cycle(), 7, 1).unwrap();
        assert_eq!(p, PeriodPair::new(1, 5));
    }

    #[test]
    fn orbit_examples() {
        let run = simulate_orbit(8, 0, &w("2212221")).unwrap();
        assert_eq!(run.states, vec![0, 2, 4, 5, 7, 1, 3, 4]);
        assert_eq!(run.period_pair, PeriodPair::new(2, 5));

        for s0 in 0..1 {
            let run = simulate_orbit(1, s0, &w("21")).unwrap();
            assert_eq!(run.period_pair, PeriodPair::new(0, 1));
        }

        let run = simulate_orbit(5, 3, &w("11111")).unwrap();
        assert_eq!(run.states, vec![3, 4, 0, 1, 2, 3]);
        assert_eq!(run.period_pair, PeriodPair::new(0, 5));

        assert!(matches!(simulate_orbit(5, 5, &w("11111")), Err(Error::StateOutOfRange { .. })));
    }

    #[test]
    fn state_driven_examples() {
        let word = state_driven_word(3, &[1, 1, 1], 0, 3).unwrap();
        assert_eq!(word.to_string(), "111");

        let word = state_driven_word(4, &[2; 4], 0, 4).unwrap();
        assert_eq!(word.to_string(), "2222");
        assert_eq!(lambda_mu(&word, 4).unwrap(), PeriodPair::new(0, 2));

        // d(even) = 2, d(odd) = 1 from 0: orbit 0,2,4,6,0 (only evens are visited)
        let table: Vec<u64> = (0..8).map(|s| if s % 2 == 0 { 2 } else { 1 }).collect();
        let word = state_driven_word(8, &table, 0, 8).unwrap();
        assert_eq!(word.to_string(), "22222222");
        assert_eq!(lambda_mu(&word, 8).unwrap(), PeriodPair::new(0, 4));
        assert_eq!(simulate_orbit(8, 0, &word).unwrap().period_pair, PeriodPair::new(0, 4));

        // starting on an odd state gives a one-letter preperiod
        let word = state_driven_word(8, &table, 1, 8).unwrap();
        assert_eq!(word.to_string(), "12222222");
        assert_eq!(lambda_mu(&word, 8).unwrap(), PeriodPair::new(1, 4));

        assert_eq!(
            state_driven_word(8, &table, 0, 7),
            Err(Error::WordTooShort { max_len: 7, modulus: 8 })
        );
    }

    #[test]
    fn scaling() {
        assert_eq!(scale_word(&w("121"), 3).unwrap().steps(), &[3, 6, 3]);
        assert_eq!(scale_word(&w("121"), 3).unwrap().to_string(), "3,6,3");
        assert_eq!(scale_word(&w("12"), 1).unwrap(), w("12"));
        let scaled = scale_word(&w("2212221"), 3).unwrap();
        assert_eq!(lambda_mu(&scaled, 8).unwrap(), PeriodPair::new(2, 5));
    }

    #[test]
    fn serialization() {
        assert_eq!(w("2212221").to_string(), "2212221");
        let scaled: StepWord = "6,3,6".parse().unwrap();
        assert_eq!(scaled.base(), 3);
        assert_eq!(scaled.to_string(), "6,3,6");
        assert!("6,5".parse::<StepWord>().is_err());
        assert!("123".parse::<StepWord>().is_err());
    }
}
