//! The two binomial convolutions used when merging adjacent colour blocks.
//!
//! Every summand is a product of terms `(x / m) * binom(m, k)` with `m` affine
//! in `s`. After the pole-free rewrite the only denominators left are powers of
//! `s`, so each side is a Laurent polynomial in `s`. Both sides are built as
//! such, compared coefficientwise, and evaluated at the requested `s`.
//! Binomials here are polynomial in their upper argument (`binom(-1, 2) = 1`);
//! the convolutions are false with the truncating convention.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::CensusError;

/// Finite Laurent polynomial in `s` with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Laurent {
    coeffs: BTreeMap<i32, BigRational>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent::default()
    }

    pub fn constant(c: BigRational) -> Self {
        let mut out = Laurent::zero();
        out.insert(0, c);
        out
    }

    /// `a*s + c`.
    pub fn affine(a: i64, c: i64) -> Self {
        let mut out = Laurent::zero();
        out.insert(1, BigRational::from_integer(a.into()));
        out.insert(0, BigRational::from_integer(c.into()));
        out
    }

    /// `c * s^e`.
    pub fn monomial(c: BigRational, e: i32) -> Self {
        let mut out = Laurent::zero();
        out.insert(e, c);
        out
    }

    fn insert(&mut self, e: i32, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(e).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, e: i32) -> BigRational {
        self.coeffs.get(&e).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<i32> {
        self.coeffs.keys().next().copied()
    }

    pub fn add(&self, other: &Laurent) -> Laurent {
        let mut out = self.clone();
        for (&e, c) in &other.coeffs {
            out.insert(e, c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (&e1, c1) in &self.coeffs {
            for (&e2, c2) in &other.coeffs {
                out.insert(e1 + e2, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Laurent {
        let mut out = Laurent::zero();
        for (&e, x) in &self.coeffs {
            out.insert(e, x * c);
        }
        out
    }

    /// Value at `s`; `None` when `s = 0` meets a negative power.
    pub fn eval(&self, s: i64) -> Option<BigRational> {
        if s == 0 {
            if self.valuation().is_some_and(|v| v < 0) {
                return None;
            }
            return Some(self.coefficient(0));
        }
        let base = BigRational::from_integer(s.into());
        let mut acc = BigRational::zero();
        for (&e, c) in &self.coeffs {
            let p = if e >= 0 {
                num_traits::pow(base.clone(), e as usize)
            } else {
                num_traits::pow(base.recip(), (-e) as usize)
            };
            acc += c * p;
        }
        Some(acc)
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})*s^{e}")?;
        }
        Ok(())
    }
}

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// `binom(a*s + c, k)` as a polynomial in `s`.
fn binom_affine(a: i64, c: i64, k: i64) -> Laurent {
    if k < 0 {
        return Laurent::zero();
    }
    let mut acc = Laurent::constant(BigRational::one());
    for i in 0..k {
        acc = acc.mul(&Laurent::affine(a, c - i)).scale(&BigRational::new(1.into(), (i + 1).into()));
    }
    acc
}

/// `(x / m) * binom(m, k)` with `m = a*s + c`.
fn scaled_affine(x: &Laurent, a: i64, c: i64, k: i64) -> Laurent {
    match k {
        k if k < 0 => Laurent::zero(),
        0 => match (a, c) {
            (0, 0) => panic!("denominator vanishes identically"),
            (0, c) => x.scale(&rat(c).recip()),
            (a, 0) => x.mul(&Laurent::monomial(rat(a).recip(), -1)),
            _ => panic!("denominator {a}*s + {c} is not a monomial"),
        },
        k => x.mul(&binom_affine(a, c - 1, k - 1)).scale(&rat(k).recip()),
    }
}

/// Both sides of an identity at one value of `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotheSides {
    pub lhs: BigRational,
    pub rhs: BigRational,
}

impl RotheSides {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

fn check(lo: u64, hi: u64, gamma: u64) -> Result<(), CensusError> {
    if lo == 0 || hi == 0 || gamma < lo + hi {
        return Err(CensusError::Parameters(format!(
            "need block sizes >= 1 and gamma >= {}, got ({lo}, {hi}, gamma = {gamma})",
            lo + hi
        )));
    }
    Ok(())
}

/// First convolution as Laurent polynomials in `s`:
///
/// `s * sum_k [b1/(b1 s + b1 - k)] C(b1 s + b1 - k, k - b1)
///        * [b2/(b2 s + b2 - (g - k))] C(b2 s + b2 - (g - k), g - k - b2)`
/// against `(b1 + b2)/((b1 + b2)(s + 1) - g) * C((b1 + b2)(s + 1) - g, g - b1 - b2)`,
/// with `k` running from `b1` to `g - b2`.
pub fn rothe_first_laurent(b1: u64, b2: u64, gamma: u64) -> Result<(Laurent, Laurent), CensusError> {
    check(b1, b2, gamma)?;
    let (b1, b2, g) = (b1 as i64, b2 as i64, gamma as i64);
    let mut sum = Laurent::zero();
    for k in b1..=g - b2 {
        let left = scaled_affine(&Laurent::constant(rat(b1)), b1, b1 - k, k - b1);
        let right = scaled_affine(&Laurent::constant(rat(b2)), b2, b2 - (g - k), g - k - b2);
        sum = sum.add(&left.mul(&right));
    }
    let lhs = Laurent::affine(1, 0).mul(&sum);
    let b = b1 + b2;
    let rhs = scaled_affine(&Laurent::constant(rat(b)), b, b - g, g - b);
    Ok((lhs, rhs))
}

/// Second convolution as Laurent polynomials in `s`:
///
/// `sum_k [b0 s/(b0 s + b0 - k)] C(b0 s + b0 - k, k - b0) * C(b1 s + b1 - 1 - (g - k), g - k - b1)`
/// against `C((b0 + b1)(s + 1) - 1 - g, g - b0 - b1)`, with `k` from `b0` to `g - b1`.
pub fn rothe_second_laurent(b0: u64, b1: u64, gamma: u64) -> Result<(Laurent, Laurent), CensusError> {
    check(b0, b1, gamma)?;
    let (b0, b1, g) = (b0 as i64, b1 as i64, gamma as i64);
    let weight = Laurent::affine(b0, 0);
    let mut lhs = Laurent::zero();
    for k in b0..=g - b1 {
        let left = scaled_affine(&weight, b0, b0 - k, k - b0);
        let right = binom_affine(b1, b1 - 1 - (g - k), g - k - b1);
        lhs = lhs.add(&left.mul(&right));
    }
    let b = b0 + b1;
    let rhs = binom_affine(b, b - 1 - g, g - b);
    Ok((lhs, rhs))
}

fn at(sides: (Laurent, Laurent), s: u64) -> Result<RotheSides, CensusError> {
    let s = s as i64;
    match (sides.0.eval(s), sides.1.eval(s)) {
        (Some(lhs), Some(rhs)) => Ok(RotheSides { lhs, rhs }),
        _ => Err(CensusError::Pole),
    }
}

/// First convolution evaluated at `s`. At `s = 0` removable singularities are
/// resolved; `g = b1 + b2` is a pole there.
pub fn rothe_first(b1: u64, b2: u64, s: u64, gamma: u64) -> Result<RotheSides, CensusError> {
    at(rothe_first_laurent(b1, b2, gamma)?, s)
}

/// Second convolution evaluated at `s`.
pub fn rothe_second(b0: u64, b1: u64, s: u64, gamma: u64) -> Result<RotheSides, CensusError> {
    at(rothe_second_laurent(b0, b1, gamma)?, s)
}
