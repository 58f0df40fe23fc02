use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::SeriesError;

/// Exponent vector, one entry per variable.
pub type Monomial = Vec<u32>;

/// Multivariate power series with integer coefficients, truncated at total
/// degree `order`. Terms above the order are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiSeries {
    vars: usize,
    order: u32,
    terms: BTreeMap<Monomial, BigInt>,
}

fn degree(m: &[u32]) -> u32 {
    m.iter().sum()
}

impl MultiSeries {
    pub fn zero(vars: usize, order: u32) -> Self {
        MultiSeries {
            vars,
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: usize, order: u32, c: impl Into<BigInt>) -> Self {
        let mut out = MultiSeries::zero(vars, order);
        out.add_term(vec![0; vars], c.into());
        out
    }

    pub fn one(vars: usize, order: u32) -> Self {
        MultiSeries::constant(vars, order, 1)
    }

    /// The variable `x_i`.
    pub fn var(vars: usize, order: u32, i: usize) -> Self {
        let mut m = vec![0; vars];
        m[i] = 1;
        MultiSeries::monomial(vars, order, m, 1)
    }

    pub fn monomial(vars: usize, order: u32, exps: Monomial, c: impl Into<BigInt>) -> Self {
        assert_eq!(exps.len(), vars);
        let mut out = MultiSeries::zero(vars, order);
        out.add_term(exps, c.into());
        out
    }

    pub fn from_terms(
        vars: usize,
        order: u32,
        terms: impl IntoIterator<Item = (Monomial, BigInt)>,
    ) -> Self {
        let mut out = MultiSeries::zero(vars, order);
        for (m, c) in terms {
            assert_eq!(m.len(), vars);
            out.add_term(m, c);
        }
        out
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() || degree(&m) > self.order {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exps: &[u32]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    /// Nonzero terms in exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coefficient(&vec![0; self.vars])
    }

    /// Smallest total degree of a nonzero term.
    pub fn valuation(&self) -> Option<u32> {
        self.terms.keys().map(|m| degree(m)).min()
    }

    /// Sum of the coefficients of total degree `deg`.
    pub fn degree_sum(&self, deg: u32) -> BigInt {
        self.terms
            .iter()
            .filter(|(m, _)| degree(m) == deg)
            .map(|(_, c)| c)
            .sum()
    }

    /// Drops every term above total degree `order`.
    pub fn truncate(&self, order: u32) -> MultiSeries {
        let order = order.min(self.order);
        MultiSeries::from_terms(
            self.vars,
            order,
            self.terms.iter().map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    fn compatible(&self, other: &MultiSeries) -> Result<(), SeriesError> {
        if self.vars != other.vars || self.order != other.order {
            return Err(SeriesError::Mismatch {
                left: (self.vars, self.order),
                right: (other.vars, other.order),
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &MultiSeries) -> Result<MultiSeries, SeriesError> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &MultiSeries) -> Result<MultiSeries, SeriesError> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &MultiSeries) -> Result<MultiSeries, SeriesError> {
        self.compatible(other)?;
        let mut out = MultiSeries::zero(self.vars, self.order);
        let rhs: Vec<(&Monomial, u32, &BigInt)> =
            other.terms.iter().map(|(m, c)| (m, degree(m), c)).collect();
        for (m1, c1) in &self.terms {
            let d1 = degree(m1);
            for &(m2, d2, c2) in &rhs {
                if d1 + d2 > self.order {
                    continue;
                }
                let m: Monomial = m1.iter().zip(m2.iter()).map(|(a, b)| a + b).collect();
                out.add_term(m, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigInt) -> MultiSeries {
        MultiSeries::from_terms(
            self.vars,
            self.order,
            self.terms.iter().map(|(m, x)| (m.clone(), x * c)),
        )
    }

    pub fn pow(&self, e: u32) -> MultiSeries {
        let mut acc = MultiSeries::one(self.vars, self.order);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplicative inverse of a series with constant term `1` or `-1`.
    pub fn invert_unit(&self) -> Result<MultiSeries, SeriesError> {
        let c = self.constant_term();
        if c.abs() != BigInt::one() {
            return Err(SeriesError::NotUnit(c));
        }
        // 1/(c + r) = c * 1/(1 - t) with t = -c r, since c = 1/c.
        let rest = self - &MultiSeries::constant(self.vars, self.order, c.clone());
        let t = rest.scale(&-&c);
        let one = MultiSeries::one(self.vars, self.order);
        let mut acc = one.clone();
        for _ in 0..self.order {
            acc = &one + &(&t * &acc);
        }
        Ok(acc.scale(&c))
    }

    /// Renames variables: `x_i` becomes `y_{map[i]}` in a ring of `vars` variables.
    /// Total degree is preserved, so the truncation order carries over.
    pub fn substitute(&self, map: &[usize], vars: usize) -> Result<MultiSeries, SeriesError> {
        if map.len() != self.vars || map.iter().any(|&j| j >= vars) {
            return Err(SeriesError::BadSubstitution {
                from: self.vars,
                to: vars,
            });
        }
        let mut out = MultiSeries::zero(vars, self.order);
        for (m, c) in &self.terms {
            let mut image = vec![0; vars];
            for (i, &e) in m.iter().enumerate() {
                image[map[i]] += e;
            }
            out.add_term(image, c.clone());
        }
        Ok(out)
    }
}

impl<'a> Add<&'a MultiSeries> for &'a MultiSeries {
    type Output = MultiSeries;
    fn add(self, rhs: &'a MultiSeries) -> MultiSeries {
        self.checked_add(rhs).expect("series shapes agree")
    }
}

impl<'a> Sub<&'a MultiSeries> for &'a MultiSeries {
    type Output = MultiSeries;
    fn sub(self, rhs: &'a MultiSeries) -> MultiSeries {
        self.checked_sub(rhs).expect("series shapes agree")
    }
}

impl<'a> Mul<&'a MultiSeries> for &'a MultiSeries {
    type Output = MultiSeries;
    fn mul(self, rhs: &'a MultiSeries) -> MultiSeries {
        self.checked_mul(rhs).expect("series shapes agree")
    }
}

impl Neg for &MultiSeries {
    type Output = MultiSeries;
    fn neg(self) -> MultiSeries {
        self.scale(&BigInt::from(-1))
    }
}

impl fmt::Display for MultiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0 + O(deg {})", self.order + 1);
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}")?;
            for (v, &e) in m.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*x{v}")?,
                    e => write!(f, "*x{v}^{e}")?,
                }
            }
        }
        write!(f, " + O(deg {})", self.order + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn x(i: usize) -> MultiSeries {
        MultiSeries::var(1, 3, i)
    }

    #[test]
    fn difference_of_squares() {
        let one = MultiSeries::one(1, 2);
        let x = MultiSeries::var(1, 2, 0);
        let p = &(&one + &x) * &(&one - &x);
        let expected = &one - &(&x * &x);
        assert_eq!(p, expected);
    }

    #[test]
    fn geometric_series() {
        let one = MultiSeries::one(1, 3);
        let inv = (&one + &x(0)).invert_unit().unwrap();
        let expected =
            MultiSeries::from_terms(1, 3, (0..=3).map(|k| (vec![k], BigInt::from(if k % 2 == 0 { 1 } else { -1 }))));
        assert_eq!(inv, expected);
        let neg = (&-&one + &x(0)).invert_unit().unwrap();
        assert_eq!(&neg * &(&-&one + &x(0)), one);
    }

    #[test]
    fn non_unit_rejected() {
        let two = MultiSeries::constant(2, 3, 2);
        assert!(matches!(two.invert_unit(), Err(SeriesError::NotUnit(_))));
        assert!(MultiSeries::var(2, 3, 1).invert_unit().is_err());
    }

    #[test]
    fn mismatched_shapes() {
        let a = MultiSeries::one(2, 3);
        let b = MultiSeries::one(2, 4);
        assert!(matches!(a.checked_mul(&b), Err(SeriesError::Mismatch { .. })));
        assert!(a.checked_add(&MultiSeries::one(3, 3)).is_err());
    }

    #[test]
    fn truncation_drops_high_terms() {
        let x = MultiSeries::var(2, 3, 0);
        let y = MultiSeries::var(2, 3, 1);
        assert!((&x.pow(2) * &y.pow(2)).is_zero());
        assert_eq!((&x * &y).valuation(), Some(2));
    }

    #[test]
    fn substitution_identifies_variables() {
        let (a, b, c) = (MultiSeries::var(3, 4, 0), MultiSeries::var(3, 4, 1), MultiSeries::var(3, 4, 2));
        let s = &(&a * &b) + &(&b * &c);
        let t = s.substitute(&[0, 1, 1], 2).unwrap();
        assert_eq!(t.coefficient(&[1, 1]), BigInt::from(1));
        assert_eq!(t.coefficient(&[0, 2]), BigInt::from(1));
        assert!(s.substitute(&[0, 1], 2).is_err());
        assert!(s.substitute(&[0, 1, 2], 2).is_err());
    }

    fn arb_series() -> impl Strategy<Value = MultiSeries> {
        prop::collection::vec(((0u32..3, 0u32..3), -5i64..6), 0..8).prop_map(|terms| {
            MultiSeries::from_terms(
                2,
                4,
                terms.into_iter().map(|((a, b), c)| (vec![a, b], BigInt::from(c))),
            )
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_series(), b in arb_series(), c in arb_series()) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn inverse_is_inverse(a in arb_series()) {
            let one = MultiSeries::one(2, 4);
            let unit = &one + &(&a - &MultiSeries::constant(2, 4, a.constant_term()));
            let inv = unit.invert_unit().unwrap();
            prop_assert_eq!(&unit * &inv, one);
        }
    }
}
