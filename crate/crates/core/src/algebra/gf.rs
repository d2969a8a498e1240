//! Closed-form generating functions of `(cyclic part, prefix, modulus)`
//! configurations.
//!
//! The coefficient of `x₁^{n₁} x₂^{n₂} y₁^{m₁} y₂^{m₂} z^t` counts words whose
//! cyclic part has `n₁` ones and `n₂` twos, whose prefix has `m₁` ones and
//! `m₂` twos, and whose modulus is `t`. The forms are kept exactly as they
//! are usually displayed. In particular the `Ω₄` form (and so the master
//! form) carries a constant term `1` from the empty word `2⁰`; every
//! coefficient with `t ≥ 1` is a genuine configuration count.

use super::poly::{MultiPoly, Var};
use super::rational::MultiRational;
use crate::wordclass::WordClass;

fn v(var: Var) -> MultiPoly {
    MultiPoly::var(var)
}

fn c(k: i64) -> MultiPoly {
    MultiPoly::from(k)
}

fn frac(num: MultiPoly, den: MultiPoly) -> MultiRational {
    MultiRational::new(num, den).expect("closed-form denominators are nonzero")
}

/// `1 − x₂z²`
fn d_twos() -> MultiPoly {
    c(1) - v(Var::X2) * v(Var::Z).pow(2)
}

/// `1 − x₂y₂z²`
fn d_twos_prefix() -> MultiPoly {
    c(1) - v(Var::X2) * v(Var::Y2) * v(Var::Z).pow(2)
}

/// `1 − x₁z − x₂z²`
fn d_free() -> MultiPoly {
    c(1) - v(Var::X1) * v(Var::Z) - v(Var::X2) * v(Var::Z).pow(2)
}

/// `x₂z / (1 − x₂²z²)`: the words `2^m`, `m` odd, at modulus `m`.
fn odd_twos() -> MultiRational {
    frac(v(Var::X2) * v(Var::Z), c(1) - v(Var::X2).pow(2) * v(Var::Z).pow(2))
}

/// Generating function of one class.
pub fn g_omega(class: WordClass) -> MultiRational {
    let (x1, x2, y1, y2, z) = (v(Var::X1), v(Var::X2), v(Var::Y1), v(Var::Y2), v(Var::Z));
    match class {
        // x₁z / ((1 − x₂z²)(1 − x₂y₂z²))
        WordClass::Omega1 => frac(&x1 * &z, d_twos() * d_twos_prefix()),
        // x₁²z² / ((1 − x₁z − x₂z²)(1 − x₂z²)(1 − x₂y₂z²))
        WordClass::Omega2 => frac(x1.pow(2) * z.pow(2), d_free() * d_twos() * d_twos_prefix()),
        // x₁x₂z³(1 + y₁ − x₂y₂z²) / ((1 − x₁z − x₂z²)(1 − x₂z²)(1 − x₂y₂z²))
        WordClass::Omega3 => frac(
            &x1 * &x2 * z.pow(3) * (c(1) + &y1 - &x2 * &y2 * z.pow(2)),
            d_free() * d_twos() * d_twos_prefix(),
        ),
        // (1 + x₂y₁z² − x₂y₂z²) / ((1 − x₂z²)(1 − x₂y₂z²)) + x₂z / (1 − x₂²z²)
        WordClass::Omega4 => {
            let even = frac(
                c(1) + &x2 * &y1 * z.pow(2) - &x2 * &y2 * z.pow(2),
                d_twos() * d_twos_prefix(),
            );
            &even + &odd_twos()
        }
    }
}

/// The combined closed form
/// `(1 + x₂y₁z² + x₁x₂y₂z³ − x₂y₂z²) / ((1 − x₂y₂z²)(1 − x₁z − x₂z²)) + x₂z / (1 − x₂²z²)`.
pub fn g_master() -> MultiRational {
    let (x1, x2, y1, y2, z) = (v(Var::X1), v(Var::X2), v(Var::Y1), v(Var::Y2), v(Var::Z));
    let main = frac(
        c(1) + &x2 * &y1 * z.pow(2) + &x1 * &x2 * &y2 * z.pow(3) - &x2 * &y2 * z.pow(2),
        d_twos_prefix() * d_free(),
    );
    &main + &odd_twos()
}

/// The sum of the four class generating functions.
pub fn g_master_sum() -> MultiRational {
    WordClass::ALL
        .into_iter()
        .map(g_omega)
        .reduce(|a, b| &a + &b)
        .expect("four classes")
}
