use std::fmt;
use std::ops::Mul;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Rational power series `f(z) = N(z) / D(z)` with `D(0) = 1`.
///
/// Coefficients follow from `c_n = N_n − Σ_{k≥1} D_k·c_{n−k}`.
#[derive(Clone, Debug)]
pub struct UniSeries {
    num: Vec<BigRational>,
    den: Vec<BigRational>,
}

fn trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

impl UniSeries {
    /// Normalizes the denominator so its constant term is one.
    pub fn new(num: Vec<BigRational>, den: Vec<BigRational>) -> Result<Self> {
        let den = trim(den);
        let Some(d0) = den.first().filter(|c| !c.is_zero()).cloned() else {
            return Err(if den.is_empty() { Error::ZeroDenominator } else { Error::NoPowerSeries });
        };
        let inv = d0.recip();
        Ok(Self {
            num: trim(num).into_iter().map(|c| c * &inv).collect(),
            den: den.into_iter().map(|c| c * &inv).collect(),
        })
    }

    pub fn numerator(&self) -> &[BigRational] {
        &self.num
    }

    pub fn denominator(&self) -> &[BigRational] {
        &self.den
    }

    /// `[zⁿ] f`.
    pub fn coefficient(&self, n: usize) -> BigRational {
        self.stream().nth(n).expect("the coefficient stream is infinite")
    }

    /// `[z⁰] f, …, [z^{n-1}] f`.
    pub fn coefficients(&self, n: usize) -> Vec<BigRational> {
        self.stream().take(n).collect()
    }

    /// Infinite iterator over the coefficients.
    pub fn stream(&self) -> CoefficientStream<'_> {
        CoefficientStream { series: self, history: Vec::new() }
    }
}

/// Incremental coefficient generator; each step costs `O(deg D)`.
#[derive(Clone, Debug)]
pub struct CoefficientStream<'a> {
    series: &'a UniSeries,
    history: Vec<BigRational>,
}

impl Iterator for CoefficientStream<'_> {
    type Item = BigRational;

    fn next(&mut self) -> Option<BigRational> {
        let n = self.history.len();
        let mut c = self.series.num.get(n).cloned().unwrap_or_else(BigRational::zero);
        for (k, dk) in self.series.den.iter().enumerate().skip(1).take(n) {
            if !dk.is_zero() {
                c -= dk * &self.history[n - k];
            }
        }
        self.history.push(c.clone());
        Some(c)
    }
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_eq(a: &[BigRational], b: &[BigRational]) -> bool {
    let n = a.len().max(b.len());
    (0..n).all(|i| {
        let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
        let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
        x == y
    })
}

impl Mul<&UniSeries> for &UniSeries {
    type Output = UniSeries;

    fn mul(self, rhs: &UniSeries) -> UniSeries {
        UniSeries { num: trim(poly_mul(&self.num, &rhs.num)), den: poly_mul(&self.den, &rhs.den) }
    }
}

/// Equality as rational functions, by cross-multiplication.
impl PartialEq for UniSeries {
    fn eq(&self, other: &Self) -> bool {
        poly_eq(&poly_mul(&self.num, &other.den), &poly_mul(&other.num, &self.den))
    }
}

impl fmt::Display for UniSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |v: &[BigRational]| -> String {
            let parts: Vec<String> = v
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| match k {
                    0 => format!("{c}"),
                    1 => format!("({c})*z"),
                    _ => format!("({c})*z^{k}"),
                })
                .collect();
            if parts.is_empty() { "0".into() } else { parts.join(" + ") }
        };
        write!(f, "({}) / ({})", show(&self.num), show(&self.den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ratio;
    use proptest::prelude::*;

    fn int(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&c| ratio(c, 1)).collect()
    }

    #[test]
    fn geometric_and_binomial() {
        let geo = UniSeries::new(int(&[1]), int(&[1, -1])).unwrap();
        assert_eq!(geo.coefficient(7), ratio(1, 1));
        let sq = &geo * &geo;
        assert_eq!(sq.coefficient(5), ratio(6, 1));
    }

    #[test]
    fn normalizes_denominator() {
        let s = UniSeries::new(int(&[2]), int(&[2, -1])).unwrap();
        assert_eq!(s.denominator()[0], ratio(1, 1));
        assert_eq!(s.coefficients(3), vec![ratio(1, 1), ratio(1, 2), ratio(1, 4)]);
    }

    #[test]
    fn rejects_vanishing_constant_term() {
        assert_eq!(UniSeries::new(int(&[1]), int(&[0, 1])).unwrap_err(), Error::NoPowerSeries);
        assert_eq!(UniSeries::new(int(&[1]), int(&[0])).unwrap_err(), Error::ZeroDenominator);
    }

    fn convolve(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        (0..a.len())
            .map(|n| (0..=n).map(|k| &a[k] * &b[n - k]).fold(BigRational::zero(), |x, y| x + y))
            .collect()
    }

    fn small_series() -> impl Strategy<Value = UniSeries> {
        (prop::collection::vec(-3i64..4, 0..4), prop::collection::vec(-3i64..4, 0..3)).prop_map(
            |(num, tail)| {
                let mut den = vec![1];
                den.extend(tail);
                UniSeries::new(int(&num), int(&den)).unwrap()
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn product_coefficients_are_the_convolution(a in small_series(), b in small_series()) {
            let n = 51;
            let prod = &a * &b;
            prop_assert_eq!(prod.coefficients(n), convolve(&a.coefficients(n), &b.coefficients(n)));
        }
    }
}
