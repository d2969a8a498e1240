use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::{Block, MultiPoly, Var};
use super::series::UniSeries;
use crate::error::{Error, Result};

/// Quotient of two multivariate polynomials. Not reduced to lowest terms;
/// equality is semantic (`a/b == c/d` iff `a·d == c·b`).
#[derive(Clone, Debug)]
pub struct MultiRational {
    num: MultiPoly,
    den: MultiPoly,
}

impl MultiRational {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self { num, den })
    }

    pub fn from_poly(num: MultiPoly) -> Self {
        Self { num, den: MultiPoly::one() }
    }

    pub fn numerator(&self) -> &MultiPoly {
        &self.num
    }

    pub fn denominator(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Quotient rule for the derivation `E = Σ_v v·∂/∂v`:
    /// `E(N/D) = (E(N)·D − N·E(D)) / D²`.
    pub fn euler(&self, block: Block) -> MultiRational {
        let num = &self.num.euler(block) * &self.den - &self.num * &self.den.euler(block);
        MultiRational { num, den: &self.den * &self.den }
    }

    pub fn substitute(&self, v: Var, value: &BigRational) -> Result<MultiRational> {
        MultiRational::new(self.num.substitute(v, value), self.den.substitute(v, value))
    }

    /// Substitutes a pair of numbers for a block of variables.
    pub fn substitute_block(&self, block: Block, values: &(BigRational, BigRational)) -> Result<MultiRational> {
        let [a, b] = block.vars();
        self.substitute(a, &values.0)?.substitute(b, &values.1)
    }

    /// Evaluates at `x = (x₁, x₂)`, `y = (y₁, y₂)` leaving a power series in `z`.
    pub fn evaluate(
        &self,
        x: &(BigRational, BigRational),
        y: &(BigRational, BigRational),
    ) -> Result<UniSeries> {
        let f = self.substitute_block(Block::X, x)?.substitute_block(Block::Y, y)?;
        f.to_series()
    }

    /// The power series of a rational function of `z` alone.
    pub fn to_series(&self) -> Result<UniSeries> {
        let num = self.num.as_univariate().ok_or_else(|| Error::Parse(format!("{} is not univariate in z", self.num)))?;
        let den = self.den.as_univariate().ok_or_else(|| Error::Parse(format!("{} is not univariate in z", self.den)))?;
        UniSeries::new(num, den)
    }

    /// Multivariate power series in `z` truncated after `z^max_z`.
    ///
    /// The `z⁰` part of the denominator must be a nonzero constant. The
    /// coefficient of `z^t` is `S_t = (N_t − Σ_{k≥1} D_k S_{t−k}) / D_0`.
    pub fn series_in_z(&self, max_z: u32) -> Result<MultiPoly> {
        let num = self.num.split_by_z();
        let den = self.den.split_by_z();
        let d0 = den[0].as_constant().filter(|c| !c.is_zero()).ok_or(Error::NoPowerSeries)?;
        let inv = d0.recip();
        let mut parts: Vec<MultiPoly> = Vec::with_capacity(max_z as usize + 1);
        for t in 0..=max_z as usize {
            let mut acc = num.get(t).cloned().unwrap_or_default();
            for (k, dk) in den.iter().enumerate().skip(1).take(t) {
                acc = &acc - &(dk * &parts[t - k]);
            }
            parts.push(acc.scale(&inv));
        }
        Ok(parts
            .iter()
            .enumerate()
            .fold(MultiPoly::zero(), |acc, (t, p)| acc + p.times_z_power(t as u32)))
    }
}

impl PartialEq for MultiRational {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl From<MultiPoly> for MultiRational {
    fn from(p: MultiPoly) -> Self {
        MultiRational::from_poly(p)
    }
}

impl Add<&MultiRational> for &MultiRational {
    type Output = MultiRational;

    fn add(self, rhs: &MultiRational) -> MultiRational {
        if self.den == rhs.den {
            return MultiRational { num: &self.num + &rhs.num, den: self.den.clone() };
        }
        MultiRational {
            num: &self.num * &rhs.den + &rhs.num * &self.den,
            den: &self.den * &rhs.den,
        }
    }
}

impl Mul<&MultiRational> for &MultiRational {
    type Output = MultiRational;

    fn mul(self, rhs: &MultiRational) -> MultiRational {
        MultiRational { num: &self.num * &rhs.num, den: &self.den * &rhs.den }
    }
}

impl Neg for &MultiRational {
    type Output = MultiRational;

    fn neg(self) -> MultiRational {
        MultiRational { num: -&self.num, den: self.den.clone() }
    }
}

impl Sub<&MultiRational> for &MultiRational {
    type Output = MultiRational;

    fn sub(self, rhs: &MultiRational) -> MultiRational {
        self + &(-rhs)
    }
}

impl Add for MultiRational {
    type Output = MultiRational;

    fn add(self, rhs: MultiRational) -> MultiRational {
        &self + &rhs
    }
}

impl Mul for MultiRational {
    type Output = MultiRational;

    fn mul(self, rhs: MultiRational) -> MultiRational {
        &self * &rhs
    }
}

impl fmt::Display for MultiRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == MultiPoly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl MultiRational {
    pub fn one() -> Self {
        MultiRational::from_poly(MultiPoly::one())
    }

    pub fn zero() -> Self {
        MultiRational::from_poly(MultiPoly::zero())
    }

    /// `1 / p`.
    pub fn recip_of(p: MultiPoly) -> Result<Self> {
        MultiRational::new(MultiPoly::one(), p)
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    pub fn constant(c: BigRational) -> Self {
        if c.is_one() {
            return MultiRational::one();
        }
        MultiRational::from_poly(MultiPoly::constant(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ratio;

    fn one_minus_z() -> MultiPoly {
        MultiPoly::one() - MultiPoly::var(Var::Z)
    }

    #[test]
    fn cancellation_to_zero() {
        let f = MultiRational::recip_of(one_minus_z()).unwrap();
        let sum = &f + &(-&f);
        assert!(sum.is_zero());
        assert_eq!(sum, MultiRational::zero());
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(MultiRational::new(MultiPoly::one(), MultiPoly::zero()).unwrap_err(), Error::ZeroDenominator);
        let f = MultiRational::recip_of(MultiPoly::var(Var::X1)).unwrap();
        assert_eq!(f.substitute(Var::X1, &ratio(0, 1)).unwrap_err(), Error::ZeroDenominator);
    }

    #[test]
    fn semantic_equality_ignores_common_factors() {
        let f = MultiRational::recip_of(one_minus_z()).unwrap();
        let g = MultiRational::new(MultiPoly::one() + MultiPoly::var(Var::Z), one_minus_z() * (MultiPoly::one() + MultiPoly::var(Var::Z))).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn evaluate_geometric() {
        let f = MultiRational::recip_of(MultiPoly::one() - MultiPoly::var(Var::X1) * MultiPoly::var(Var::Z)).unwrap();
        let s = f.evaluate(&(ratio(1, 1), ratio(0, 1)), &(ratio(0, 1), ratio(0, 1))).unwrap();
        assert_eq!(s, UniSeries::new(vec![ratio(1, 1)], vec![ratio(1, 1), ratio(-1, 1)]).unwrap());
        assert_eq!(s.coefficient(7), ratio(1, 1));
    }

    #[test]
    fn evaluate_without_power_series() {
        // 1 / (x1 - z) at x1 = 0
        let f = MultiRational::recip_of(MultiPoly::var(Var::X1) - MultiPoly::var(Var::Z)).unwrap();
        let err = f.evaluate(&(ratio(0, 1), ratio(1, 2)), &(ratio(1, 2), ratio(1, 2))).unwrap_err();
        assert_eq!(err, Error::NoPowerSeries);
    }

    #[test]
    fn euler_quotient_rule() {
        // E_x (1 / (1 - x1 z)) = x1 z / (1 - x1 z)^2
        let d = MultiPoly::one() - MultiPoly::var(Var::X1) * MultiPoly::var(Var::Z);
        let f = MultiRational::recip_of(d.clone()).unwrap();
        let expected = MultiRational::new(MultiPoly::var(Var::X1) * MultiPoly::var(Var::Z), d.pow(2)).unwrap();
        assert_eq!(f.euler(Block::X), expected);
        assert!(f.euler(Block::Y).is_zero());
    }

    #[test]
    fn series_in_z_geometric() {
        let d = MultiPoly::one() - MultiPoly::var(Var::X1) * MultiPoly::var(Var::Z);
        let s = MultiRational::recip_of(d).unwrap().series_in_z(4).unwrap();
        for k in 0..=4 {
            assert_eq!(s.coefficient(&[k, 0, 0, 0, k]), ratio(1, 1));
        }
        assert_eq!(s.len(), 5);
    }
}
