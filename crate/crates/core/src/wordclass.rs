//! Cyclic parts, admissible prefixes and the four-class partition of `{1,2}*`.
//!
//! A step word `s` splits into a prefix `s₀…s_{λ-1}` and a cyclic part
//! `s_λ…s_{λ+μ-1}`. Conversely a nonempty word `a` is the cyclic part of some
//! `s` modulo every admissible `T`, and the admissible prefixes form the set
//! `B(a)`. Enumerating `(a, b, T)` triples gives the coefficients
//! `g(n₁, n₂, m₁, m₂, t)` of the master generating function, so this module is
//! the combinatorial oracle for [`crate::algebra::gf`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::decimation::StepWord;
use crate::error::{Error, Result};

/// A nonempty word over `{1, 2}` regarded as the cyclic part of a step word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicPart(StepWord);

impl CyclicPart {
    pub fn new(word: StepWord) -> Result<Self> {
        if word.is_empty() {
            return Err(Error::EmptyWord);
        }
        if word.base() != 1 {
            return Err(Error::InvalidLetter { letter: word.steps()[0], base: 1 });
        }
        Ok(Self(word))
    }

    pub fn word(&self) -> &StepWord {
        &self.0
    }

    /// Residues `0, a₀, a₀+a₁, …, a₀+…+a_{l-2}` modulo `modulus`.
    fn cycle_residues(&self, modulus: u64) -> Vec<u64> {
        let steps = self.0.steps();
        let mut acc = 0u64;
        let mut out = Vec::with_capacity(steps.len());
        out.push(0);
        for s in &steps[..steps.len() - 1] {
            acc += s;
            out.push(acc % modulus);
        }
        out
    }
}

impl std::str::FromStr for CyclicPart {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CyclicPart::new(s.parse()?)
    }
}

impl fmt::Display for CyclicPart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

fn pairwise_distinct(residues: &[u64], modulus: u64) -> bool {
    let mut seen = vec![false; modulus as usize];
    residues.iter().all(|&r| !std::mem::replace(&mut seen[r as usize], true))
}

/// All `T` with `T | w(a)` whose cycle residues are pairwise distinct.
///
/// For `{1,2}` words this is `{w(a)}`, plus `m` when `a = 2^m` with `m` odd.
pub fn admissible_moduli(a: &CyclicPart) -> BTreeSet<u64> {
    let weight = a.word().weight();
    (1..=weight)
        .filter(|&t| weight.is_multiple_of(t))
        .filter(|&t| pairwise_distinct(&a.cycle_residues(t), t))
        .collect()
}

/// The full prefix set `B(a)` modulo `modulus`, ordered by length then
/// lexicographically. The empty word is always a member.
///
/// A prefix `b` is admissible when the residues
/// `-b_{l-1}, -b_{l-1}-b_{l-2}, …, -(b₀+…+b_{l-1})` avoid the cycle residues
/// of `a` and are pairwise distinct, i.e. the whole trajectory `b·a` visits
/// distinct residues before closing the cycle. Prepending letters only adds
/// residues, so a rejected prefix has no admissible extension and the search
/// is breadth-first with pruning. A self-avoiding walk on `Z/T` has fewer than
/// `T` steps, which bounds the depth.
pub fn prefix_set(a: &CyclicPart, modulus: u64) -> Result<Vec<StepWord>> {
    if !admissible_moduli(a).contains(&modulus) {
        return Err(Error::InadmissibleModulus { word: a.to_string(), modulus });
    }
    let mut occupied = vec![false; modulus as usize];
    for r in a.cycle_residues(modulus) {
        occupied[r as usize] = true;
    }

    struct Partial {
        word: StepWord,
        point: u64,
        occupied: Vec<bool>,
    }

    let mut out = vec![StepWord::empty()];
    let mut frontier = vec![Partial { word: StepWord::empty(), point: 0, occupied }];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for partial in &frontier {
            for letter in [1u64, 2] {
                let point = (partial.point + modulus - letter % modulus) % modulus;
                if partial.occupied[point as usize] {
                    continue;
                }
                let mut occupied = partial.occupied.clone();
                occupied[point as usize] = true;
                next.push(Partial { word: partial.word.prepended(letter), point, occupied });
            }
        }
        next.sort_by(|x, y| x.word.steps().cmp(y.word.steps()));
        out.extend(next.iter().map(|p| p.word.clone()));
        frontier = next;
    }
    Ok(out)
}

/// The four pattern classes partitioning the nonempty words over `{1,2}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WordClass {
    /// `2*1`
    Omega1,
    /// `{1,2}* 1 2* 1`
    Omega2,
    /// `{1,2}* 1 2 2*`
    Omega3,
    /// `2*`
    Omega4,
}

impl WordClass {
    pub const ALL: [WordClass; 4] =
        [WordClass::Omega1, WordClass::Omega2, WordClass::Omega3, WordClass::Omega4];

    pub fn name(self) -> &'static str {
        match self {
            WordClass::Omega1 => "omega1",
            WordClass::Omega2 => "omega2",
            WordClass::Omega3 => "omega3",
            WordClass::Omega4 => "omega4",
        }
    }

    /// Pattern membership for a nonempty word.
    pub fn matches(self, steps: &[u64]) -> bool {
        let Some((&last, init)) = steps.split_last() else {
            return false;
        };
        match self {
            WordClass::Omega1 => last == 1 && init.iter().all(|&s| s == 2),
            WordClass::Omega2 => last == 1 && init.contains(&1),
            WordClass::Omega3 => match steps.iter().rposition(|&s| s == 1) {
                Some(i) => i + 1 < steps.len(),
                None => false,
            },
            WordClass::Omega4 => steps.iter().all(|&s| s == 2),
        }
    }
}

impl fmt::Display for WordClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn classify(a: &CyclicPart) -> WordClass {
    let steps = a.word().steps();
    WordClass::ALL
        .into_iter()
        .find(|c| c.matches(steps))
        .expect("the four classes cover every nonempty word")
}

/// Exponent tuple `(n₁, n₂, m₁, m₂, t)`: letter counts of the cyclic part and
/// prefix, and the modulus.
pub type ConfigKey = (u32, u32, u32, u32, u64);

/// The number of `(a, b)` pairs for one exponent tuple.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConfigCount {
    pub n1: u32,
    pub n2: u32,
    pub m1: u32,
    pub m2: u32,
    pub t: u64,
    pub count: u64,
}

/// Every arrangement of `ones` ones and `twos` twos.
fn arrangements(ones: u32, twos: u32) -> Vec<Vec<u64>> {
    fn rec(ones: u32, twos: u32, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if ones == 0 && twos == 0 {
            out.push(cur.clone());
            return;
        }
        if ones > 0 {
            cur.push(1);
            rec(ones - 1, twos, cur, out);
            cur.pop();
        }
        if twos > 0 {
            cur.push(2);
            rec(ones, twos - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(ones, twos, &mut Vec::new(), &mut out);
    out
}

/// Brute-force `g(n₁, n₂, m₁, m₂, t)`: enumerates every cyclic part with the
/// given letter counts and every admissible prefix with the given counts.
pub fn count_configs(n1: u32, n2: u32, m1: u32, m2: u32, t: u64) -> ConfigCount {
    let mut count = 0;
    if n1 + n2 > 0 && t > 0 {
        for steps in arrangements(n1, n2) {
            let a = CyclicPart::new(StepWord::new(steps).expect("letters are 1 and 2"))
                .expect("nonempty");
            if !admissible_moduli(&a).contains(&t) {
                continue;
            }
            count += prefix_set(&a, t)
                .expect("modulus is admissible")
                .iter()
                .filter(|b| b.letter_counts() == (m1 as usize, m2 as usize))
                .count() as u64;
        }
    }
    ConfigCount { n1, n2, m1, m2, t, count }
}

/// All nonzero `g(n₁, n₂, m₁, m₂, t)` with `1 ≤ t ≤ max_t`.
///
/// A cyclic part admits `t` only if `w(a) = t` or `a = 2^t`, so it suffices
/// to enumerate the words of weight at most `max_t` and the all-twos words
/// of length at most `max_t`.
pub fn config_table(max_t: u64) -> BTreeMap<ConfigKey, u64> {
    let mut words: BTreeSet<Vec<u64>> = BTreeSet::new();
    fn compositions(remaining: u64, cur: &mut Vec<u64>, out: &mut BTreeSet<Vec<u64>>) {
        if !cur.is_empty() {
            out.insert(cur.clone());
        }
        for letter in [1u64, 2] {
            if letter <= remaining {
                cur.push(letter);
                compositions(remaining - letter, cur, out);
                cur.pop();
            }
        }
    }
    compositions(max_t, &mut Vec::new(), &mut words);
    for m in 1..=max_t {
        words.insert(vec![2; m as usize]);
    }

    let mut table = BTreeMap::new();
    for steps in words {
        let a = CyclicPart::new(StepWord::new(steps).expect("letters are 1 and 2")).expect("nonempty");
        let (n1, n2) = a.word().letter_counts();
        for t in admissible_moduli(&a).into_iter().filter(|&t| t <= max_t) {
            for b in prefix_set(&a, t).expect("modulus is admissible") {
                let (m1, m2) = b.letter_counts();
                *table.entry((n1 as u32, n2 as u32, m1 as u32, m2 as u32, t)).or_insert(0) += 1;
            }
        }
    }
    table
}
