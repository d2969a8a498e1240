use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// The five variables, in exponent-slot order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X1 = 0,
    X2 = 1,
    Y1 = 2,
    Y2 = 3,
    Z = 4,
}

impl Var {
    pub const ALL: [Var; 5] = [Var::X1, Var::X2, Var::Y1, Var::Y2, Var::Z];

    pub fn slot(self) -> usize {
        self as usize
    }

    fn name(self) -> &'static str {
        match self {
            Var::X1 => "x1",
            Var::X2 => "x2",
            Var::Y1 => "y1",
            Var::Y2 => "y2",
            Var::Z => "z",
        }
    }
}

/// A pair of variables acted on together by the Euler operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Block {
    /// `(x₁, x₂)`: letter counts of the cyclic part.
    X,
    /// `(y₁, y₂)`: letter counts of the prefix.
    Y,
}

impl Block {
    pub fn vars(self) -> [Var; 2] {
        match self {
            Block::X => [Var::X1, Var::X2],
            Block::Y => [Var::Y1, Var::Y2],
        }
    }
}

pub type Exponents = [u32; 5];

/// Sparse polynomial in `(x₁, x₂, y₁, y₂, z)` with exact rational
/// coefficients. Zero coefficients are never stored, so equal polynomials
/// have equal term maps.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    terms: BTreeMap<Exponents, BigRational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, [0; 5])
    }

    pub fn var(v: Var) -> Self {
        let mut e = [0; 5];
        e[v.slot()] = 1;
        Self::monomial(BigRational::one(), e)
    }

    pub fn monomial(c: BigRational, exponents: Exponents) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exponents, c);
        }
        Self { terms }
    }

    /// Builds a polynomial from `(coefficient, exponents)` pairs, merging
    /// repeated exponents.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (BigRational, Exponents)>,
    {
        let mut p = Self::zero();
        for (c, e) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exponents: &Exponents) -> BigRational {
        self.terms.get(exponents).cloned().unwrap_or_else(BigRational::zero)
    }

    fn add_term(&mut self, e: Exponents, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly { terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect() }
    }

    pub fn pow(&self, n: u32) -> MultiPoly {
        (0..n).fold(MultiPoly::one(), |acc, _| &acc * self)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|e| e[v.slot()]).max().unwrap_or(0)
    }

    /// `Σ_v v·∂/∂v` over the block: scales each term by its block degree.
    pub fn euler(&self, block: Block) -> MultiPoly {
        let [a, b] = block.vars();
        let terms = self
            .terms
            .iter()
            .filter_map(|(e, c)| {
                let w = e[a.slot()] + e[b.slot()];
                (w != 0).then(|| (*e, c * BigRational::from_integer(w.into())))
            })
            .collect();
        MultiPoly { terms }
    }

    /// Substitutes a number for one variable.
    pub fn substitute(&self, v: Var, value: &BigRational) -> MultiPoly {
        let mut powers: Vec<BigRational> = vec![BigRational::one()];
        let mut out = MultiPoly::zero();
        for (e, c) in &self.terms {
            let k = e[v.slot()] as usize;
            while powers.len() <= k {
                let next = powers.last().expect("nonempty") * value;
                powers.push(next);
            }
            let mut e2 = *e;
            e2[v.slot()] = 0;
            out.add_term(e2, c * &powers[k]);
        }
        out
    }

    /// Splits by powers of `z`: entry `k` holds the coefficient of `z^k` as a
    /// polynomial in the remaining variables.
    pub fn split_by_z(&self) -> Vec<MultiPoly> {
        let z = Var::Z.slot();
        let mut parts = vec![MultiPoly::zero(); self.degree_in(Var::Z) as usize + 1];
        for (e, c) in &self.terms {
            let mut e2 = *e;
            e2[z] = 0;
            parts[e[z] as usize].terms.insert(e2, c.clone());
        }
        parts
    }

    /// Inverse of [`MultiPoly::split_by_z`] applied to a single part.
    pub fn times_z_power(&self, k: u32) -> MultiPoly {
        let z = Var::Z.slot();
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut e2 = *e;
                e2[z] += k;
                (e2, c.clone())
            })
            .collect();
        MultiPoly { terms }
    }

    /// The constant term when the polynomial has no other terms.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&[0; 5]).cloned(),
            _ => None,
        }
    }

    /// Coefficients in `z` when no other variable occurs.
    pub fn as_univariate(&self) -> Option<Vec<BigRational>> {
        let z = Var::Z.slot();
        let mut out = vec![BigRational::zero(); self.degree_in(Var::Z) as usize + 1];
        for (e, c) in &self.terms {
            if e.iter().enumerate().any(|(i, &k)| i != z && k != 0) {
                return None;
            }
            out[e[z] as usize] = c.clone();
        }
        Some(out)
    }
}

impl From<i64> for MultiPoly {
    fn from(c: i64) -> Self {
        MultiPoly::constant(BigRational::from_integer(c.into()))
    }
}

impl From<Var> for MultiPoly {
    fn from(v: Var) -> Self {
        MultiPoly::var(v)
    }
}

impl Add<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;

    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;

    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Mul<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;

    // Monomials multiply by adding exponents.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = std::array::from_fn(|i| ea[i] + eb[i]);
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;

    fn neg(self) -> MultiPoly {
        MultiPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                (&self).$method(rhs)
            }
        }
        impl $tr<MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                self.$method(&rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;

    fn neg(self) -> MultiPoly {
        -&self
    }
}

/// Canonical dump: terms in ascending exponent order, e.g. `1 - x2*z^2`.
impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let magnitude = c.abs();
            let vars: Vec<String> = Var::ALL
                .iter()
                .filter(|v| e[v.slot()] > 0)
                .map(|v| match e[v.slot()] {
                    1 => v.name().to_string(),
                    k => format!("{}^{k}", v.name()),
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                f.write_str(&vars.join("*"))?;
            } else {
                write!(f, "{magnitude}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}
