use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use crate::error::{Error, Result};

/// Exact probability `p ∈ (0, 1)` of the step `2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StepProbability {
    p: BigRational,
}

impl StepProbability {
    pub const DEFAULT_DENOMINATOR_LIMIT: u64 = 1_000_000;

    pub fn new(p: BigRational) -> Result<Self> {
        Self::with_limit(p, Self::DEFAULT_DENOMINATOR_LIMIT)
    }

    /// Like [`StepProbability::new`] with a custom bound on the reduced
    /// denominator.
    pub fn with_limit(p: BigRational, limit: u64) -> Result<Self> {
        if !p.is_positive() || p >= BigRational::one() {
            return Err(Error::ProbabilityOutOfRange(p.to_string()));
        }
        if p.denom() > &BigInt::from(limit) {
            return Err(Error::ProbabilityTooFine { den: p.denom().to_string(), limit });
        }
        Ok(Self { p })
    }

    pub fn from_ratio(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::ZeroDenominator);
        }
        Self::new(BigRational::new(num.into(), den.into()))
    }

    /// Probability of step `2`.
    pub fn p(&self) -> &BigRational {
        &self.p
    }

    /// Probability of step `1`.
    pub fn complement(&self) -> BigRational {
        BigRational::one() - &self.p
    }

    /// The probability vector `π = (1 − p, p)`.
    pub fn pi(&self) -> (BigRational, BigRational) {
        (self.complement(), self.p.clone())
    }

    pub fn to_f64(&self) -> f64 {
        self.p.to_f64().expect("bounded rational converts to f64")
    }
}

impl FromStr for StepProbability {
    type Err = Error;

    /// Parses `"a/b"` or an integer.
    fn from_str(s: &str) -> Result<Self> {
        let p: BigRational = s.trim().parse().map_err(|e| Error::Parse(format!("{s:?}: {e}")))?;
        StepProbability::new(p)
    }
}

impl fmt::Display for StepProbability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.p.fmt(f)
    }
}

/// A step probability as accepted by the sampling engine: exact or float.
#[derive(Clone, Debug, PartialEq)]
pub enum Probability {
    Exact(StepProbability),
    Float(f64),
}

impl Probability {
    pub fn float(p: f64) -> Result<Self> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::ProbabilityOutOfRange(p.to_string()));
        }
        Ok(Probability::Float(p))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Probability::Exact(p) => p.to_f64(),
            Probability::Float(p) => *p,
        }
    }

    /// `(numerator, denominator)` when the probability is exact and fits `u32`.
    pub(crate) fn small_ratio(&self) -> Option<(u32, u32)> {
        match self {
            Probability::Exact(p) => Some((p.p().numer().to_u32()?, p.p().denom().to_u32()?)),
            Probability::Float(_) => None,
        }
    }
}

impl From<StepProbability> for Probability {
    fn from(p: StepProbability) -> Self {
        Probability::Exact(p)
    }
}

impl FromStr for Probability {
    type Err = Error;

    /// Exact when the text is `"a/b"` or an integer, float otherwise.
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().parse::<BigRational>() {
            Ok(p) => Ok(Probability::Exact(StepProbability::new(p)?)),
            Err(_) => {
                let p: f64 = s.trim().parse().map_err(|e| Error::Parse(format!("{s:?}: {e}")))?;
                Probability::float(p)
            }
        }
    }
}

impl fmt::Display for Probability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Probability::Exact(p) => p.fmt(f),
            Probability::Float(p) => p.fmt(f),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn open_interval() {
        assert!(StepProbability::from_ratio(0, 1).is_err());
        assert!(StepProbability::from_ratio(1, 1).is_err());
        assert!(StepProbability::from_ratio(3, 2).is_err());
        assert!(StepProbability::from_ratio(-1, 2).is_err());
        assert!(StepProbability::from_ratio(1, 2).is_ok());
        assert!(Probability::float(0.0).is_err());
        assert!(Probability::float(f64::NAN).is_err());
    }

    #[test]
    fn denominator_limit() {
        assert!(StepProbability::from_ratio(1, 1_000_001).is_err());
        assert!(StepProbability::from_ratio(1, 1_000_000).is_ok());
        let p = BigRational::new(1.into(), 7.into());
        assert!(StepProbability::with_limit(p, 5).is_err());
    }

    #[test]
    fn parsing() {
        let p: StepProbability = "2/4".parse().unwrap();
        assert_eq!(p.to_string(), "1/2");
        assert_eq!(p.pi(), (BigRational::new(1.into(), 2.into()), BigRational::new(1.into(), 2.into())));
        assert!("abc".parse::<StepProbability>().is_err());
        assert!(matches!("0.25".parse::<Probability>().unwrap(), Probability::Float(p) if p == 0.25));
        assert!(matches!("1/4".parse::<Probability>().unwrap(), Probability::Exact(_)));
    }
}
