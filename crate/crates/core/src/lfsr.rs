//! Binary LFSRs and the period of the LFSR-driven decimation word.
//!
//! With a primitive characteristic polynomial of degree `k`, the output
//! `σ₀σ₁…` is an m-sequence of period `T = 2^k − 1` and the register steps
//! through all `T` nonzero states. Self-decimating the register, i.e.
//! clocking it once when its current output bit is `0` and twice when it is
//! `1`, gives a state orbit of period `⌊2T/3⌋` from every nonzero fill.

use std::fmt;

use crate::decimation::{lambda_mu_letters, PeriodPair, StepWord};
use crate::error::{Error, Result};

pub const MAX_DEGREE: u32 = 24;

/// Polynomial over GF(2) as a bitmask: bit `i` is the coefficient of `xⁱ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf2Poly(u32);

impl Gf2Poly {
    pub fn new(mask: u32) -> Result<Self> {
        if mask < 2 {
            return Err(Error::DegreeOutOfRange(0));
        }
        let poly = Gf2Poly(mask);
        if poly.degree() > MAX_DEGREE {
            return Err(Error::DegreeOutOfRange(poly.degree()));
        }
        Ok(poly)
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn degree(self) -> u32 {
        31 - self.0.leading_zeros()
    }

    /// `2^k − 1`
    pub fn max_period(self) -> u64 {
        (1u64 << self.degree()) - 1
    }

    /// Feedback taps: the coefficients below the leading one.
    fn taps(self) -> u32 {
        self.0 & !(1 << self.degree())
    }

    /// `a·b mod self` for reduced operands.
    fn mul_mod(self, a: u32, b: u32) -> u32 {
        let k = self.degree();
        let mut product: u64 = 0;
        for i in 0..k {
            if b >> i & 1 == 1 {
                product ^= (a as u64) << i;
            }
        }
        let modulus = self.0 as u64;
        for bit in (k..2 * k).rev() {
            if product >> bit & 1 == 1 {
                product ^= modulus << (bit - k);
            }
        }
        product as u32
    }

    /// `x^e mod self`.
    pub fn x_pow_mod(self, mut e: u64) -> u32 {
        let mut result = if self.degree() == 0 { 0 } else { 1 };
        // x mod f (x itself unless f = x + c)
        let mut base = if self.degree() == 1 { self.0 & 1 } else { 2 };
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul_mod(result, base);
            }
            base = self.mul_mod(base, base);
            e >>= 1;
        }
        result
    }

    /// Irreducibility over GF(2) by trial division with every polynomial of
    /// degree up to `k/2`.
    pub fn is_irreducible(self) -> bool {
        let k = self.degree();
        (2u32..1 << (k / 2 + 1)).all(|d| gf2_rem(self.0, d) != 0)
    }
}

fn gf2_rem(mut a: u32, b: u32) -> u32 {
    let db = 31 - b.leading_zeros();
    while a != 0 && 31 - a.leading_zeros() >= db {
        a ^= b << (31 - a.leading_zeros() - db);
    }
    a
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl fmt::Display for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = (0..=self.degree())
            .rev()
            .filter(|i| self.0 >> i & 1 == 1)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

/// True iff `x` has multiplicative order exactly `2^k − 1` modulo `poly`.
///
/// Checks `x^(2^k−1) ≡ 1` and `x^((2^k−1)/r) ≢ 1` for every prime `r` dividing
/// `2^k − 1`, after an irreducibility test.
pub fn is_primitive(poly: Gf2Poly) -> Result<bool> {
    let k = poly.degree();
    if !(1..=MAX_DEGREE).contains(&k) {
        return Err(Error::DegreeOutOfRange(k));
    }
    if poly.0 & 1 == 0 || !poly.is_irreducible() {
        return Ok(false);
    }
    let order = poly.max_period();
    if poly.x_pow_mod(order) != 1 {
        return Ok(false);
    }
    Ok(prime_factors(order).into_iter().all(|r| poly.x_pow_mod(order / r) != 1))
}

/// The primitive polynomial of degree `k` with the smallest mask.
pub fn first_primitive(k: u32) -> Result<Gf2Poly> {
    if !(1..=MAX_DEGREE).contains(&k) {
        return Err(Error::DegreeOutOfRange(k));
    }
    for mask in (1u32 << k | 1..1u32 << (k + 1)).step_by(2) {
        let poly = Gf2Poly(mask);
        if is_primitive(poly)? {
            return Ok(poly);
        }
    }
    unreachable!("primitive polynomials exist in every degree")
}

/// Characteristic polynomial plus a nonzero `k`-bit fill.
///
/// Fibonacci convention: the state holds `(σ_t, …, σ_{t+k−1})` with `σ_t` in
/// bit 0, the output is bit 0, and `σ_{t+k} = Σ_{i<k} c_i σ_{t+i}` where `c_i`
/// are the nonleading coefficients. Bit `i` of the fill is `σ_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LfsrSpec {
    poly: Gf2Poly,
    fill: u32,
}

impl LfsrSpec {
    pub fn new(poly: Gf2Poly, fill: u32) -> Result<Self> {
        if poly.mask() & 1 == 0 {
            return Err(Error::DegeneratePolynomial(poly.mask()));
        }
        if fill == 0 || fill >> poly.degree() != 0 {
            return Err(Error::InvalidFill { degree: poly.degree() });
        }
        Ok(Self { poly, fill })
    }

    pub fn poly(&self) -> Gf2Poly {
        self.poly
    }

    pub fn fill(&self) -> u32 {
        self.fill
    }

    pub fn stream(&self) -> LfsrStream {
        LfsrStream { state: self.fill, taps: self.poly.taps(), top: self.poly.degree() - 1 }
    }
}

/// Infinite output bit stream of an LFSR.
#[derive(Clone, Debug)]
pub struct LfsrStream {
    state: u32,
    taps: u32,
    top: u32,
}

impl LfsrStream {
    pub fn state(&self) -> u32 {
        self.state
    }
}

impl Iterator for LfsrStream {
    type Item = u8;

    fn next(&mut self) -> Option<u8> {
        let out = (self.state & 1) as u8;
        let feedback = (self.state & self.taps).count_ones() & 1;
        self.state = (self.state >> 1) | (feedback << self.top);
        Some(out)
    }
}

/// Step letters of the self-decimated register: `1` when the current output
/// bit is `0`, `2` when it is `1`, the register advancing by that many clocks.
#[derive(Clone, Debug)]
pub struct SelfDecimatedSteps {
    register: LfsrStream,
}

impl SelfDecimatedSteps {
    pub fn new(spec: &LfsrSpec) -> Self {
        Self { register: spec.stream() }
    }

    /// The current register state.
    pub fn state(&self) -> u32 {
        self.register.state()
    }
}

impl Iterator for SelfDecimatedSteps {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let step = 1 + (self.register.state() & 1) as u64;
        for _ in 0..step {
            self.register.next();
        }
        Some(step)
    }
}

/// First `n` output bits.
pub fn sigma_stream(spec: &LfsrSpec, n: usize) -> Vec<u8> {
    spec.stream().take(n).collect()
}

/// Letterwise `0 ↦ 1`, `1 ↦ 2`.
pub fn rueppel_word(bits: &[u8]) -> StepWord {
    StepWord::new(bits.iter().map(|&b| if b == 0 { 1 } else { 2 }).collect())
        .expect("letters are 1 and 2")
}

/// Outcome of decimating by an m-sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct RueppelReport {
    pub k: u32,
    #[serde(rename = "T")]
    pub modulus: u64,
    pub lambda: u64,
    pub mu: u64,
    pub expected_mu: u64,
}

impl RueppelReport {
    pub fn period_pair(&self) -> PeriodPair {
        PeriodPair::new(self.lambda, self.mu)
    }
}

/// `(λ, μ)` modulo `T = 2^k − 1` of the self-decimated register started
/// from `fill`, with the expected period `⌊2T/3⌋` alongside.
///
/// The step word is `s_t = 1 + σ(S_t)`, read from the decimated state `S_t`
/// rather than from the undecimated output position `t`.
pub fn rueppel_mu(poly: Gf2Poly, fill: u32) -> Result<RueppelReport> {
    if !is_primitive(poly)? {
        return Err(Error::NotPrimitive(poly.mask()));
    }
    let spec = LfsrSpec::new(poly, fill)?;
    let modulus = poly.max_period();
    let pair = lambda_mu_letters(SelfDecimatedSteps::new(&spec), modulus, 1)?;
    Ok(RueppelReport {
        k: poly.degree(),
        modulus,
        lambda: pair.lambda,
        mu: pair.mu,
        expected_mu: 2 * modulus / 3,
    })
}
