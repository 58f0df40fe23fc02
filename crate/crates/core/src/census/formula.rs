use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{binom, BigCount, CensusError};
use crate::complex::{CoarseColourVector, ColourVector, Composition};

/// `(x / m) * binom(m, k)` without the removable pole: for `k >= 1` it equals
/// `x * binom(m-1, k-1) / k`. `None` only for the genuine pole `k = 0, m = 0`.
pub(crate) fn scaled_binom(x: &BigRational, m: i64, k: i64) -> Option<BigRational> {
    if k < 0 {
        return Some(BigRational::zero());
    }
    if k == 0 {
        if m == 0 {
            return None;
        }
        return Some(x / BigRational::from_integer(m.into()));
    }
    let b = BigInt::from(binom(m - 1, k - 1));
    Some(x * BigRational::new(b, k.into()))
}

fn ratio(x: i64) -> BigRational {
    BigRational::from_integer(x.into())
}

fn rational_pow(base: i64, exp: i64) -> BigRational {
    let b = ratio(base);
    if exp >= 0 {
        num_traits::pow(b, exp as usize)
    } else {
        num_traits::pow(b.recip(), (-exp) as usize)
    }
}

fn into_count(value: BigRational, what: &str) -> BigCount {
    assert!(value.is_integer(), "{what} evaluated to non-integer {value}");
    let int = value.to_integer();
    match int.sign() {
        Sign::Minus => panic!("{what} evaluated to negative {int}"),
        _ => int.magnitude().clone(),
    }
}

fn factor(x: i64, m: i64, k: i64) -> BigRational {
    scaled_binom(&ratio(x), m, k).expect("pole excluded for positive index")
}

/// Index-0 rule: the only complex is the marked facet with colours `(0,1,...,1)`.
fn index_zero(gamma: &[u64]) -> BigCount {
    let unit = gamma[0] == 0 && gamma[1..].iter().all(|&g| g == 1);
    if unit {
        BigUint::one()
    } else {
        BigUint::zero()
    }
}

/// Triangulations of the rooted `(n+2)`-gon with `alpha` vertices of colour a,
/// `beta` of colour b and `gamma` of colour c; the root edge runs from b to c.
pub fn count_d2(alpha: u64, beta: u64, gamma: u64) -> BigCount {
    let (a, b, c) = (alpha as i64, beta as i64, gamma as i64);
    let s = a + b + c - 2;
    if s < 0 {
        return BigUint::zero();
    }
    if alpha == 0 || s == 0 {
        return index_zero(&[alpha, beta, gamma]);
    }
    let value = ratio(s)
        * factor(a, b + c - 1, a)
        * factor(1, a + c - 1, b - 1)
        * factor(1, a + b - 1, c - 1);
    into_count(value, "count_d2")
}

/// Number of `d`-dimensional rooted complexes with colour vector `gamma`.
pub fn count_full(gamma: &ColourVector) -> BigCount {
    let g = gamma.counts();
    let d = gamma.d() as i64;
    let s = gamma.s();
    if s < 0 {
        return BigUint::zero();
    }
    if g[0] == 0 || s == 0 {
        return index_zero(g);
    }
    let g0 = g[0] as i64;
    let mut value = rational_pow(s, d - 1) * factor(g0, s - g0 + 1, g0);
    for &gj in &g[1..] {
        let gj = gj as i64;
        value *= factor(1, s - gj + 1, gj - 1);
    }
    into_count(value, "count_full")
}

/// Number of complexes whose colours, merged into consecutive blocks of sizes
/// `beta`, have multiplicities `gamma`.
pub fn count_coarse(beta: &Composition, gamma: &CoarseColourVector) -> Result<BigCount, CensusError> {
    let parts = beta.parts();
    let g = gamma.counts();
    if parts.len() != g.len() {
        return Err(CensusError::Length {
            expected: parts.len(),
            found: g.len(),
        });
    }
    let d = beta.d() as i64;
    let k = beta.k() as i64;
    let s = gamma.total() as i64 - d;
    if s < 0 {
        return Ok(BigUint::zero());
    }
    if s == 0 {
        let unit = g[0] + 1 == parts[0] as u64
            && g[1..].iter().zip(&parts[1..]).all(|(&x, &b)| x == b as u64);
        return Ok(if unit { BigUint::one() } else { BigUint::zero() });
    }
    let (b0, g0) = (parts[0] as i64, g[0] as i64);
    let mut value = rational_pow(s, k - 1) * factor(g0 - b0 + 1, b0 * s + b0 - g0, g0 - b0 + 1);
    for (&gj, &bj) in g[1..].iter().zip(&parts[1..]) {
        let (gj, bj) = (gj as i64, bj as i64);
        value *= factor(bj, bj * s + bj - gj, gj - bj);
    }
    Ok(into_count(value, "count_coarse"))
}

/// Two-colour count, both ends of the root edge white; one black vertex per
/// triangle.
pub fn count_ww(b: u64, w: u64) -> BigCount {
    let (bi, wi) = (b as i64, w as i64);
    match bi + wi {
        t if t < 2 => BigUint::zero(),
        2 => BigUint::from(((b, w) == (0, 2)) as u8),
        _ => {
            let value = ratio(2 * bi)
                * factor(1, 2 * bi + wi - 2, wi - 2)
                * factor(1, wi - 1, bi);
            into_count(value, "count_ww")
        }
    }
}

/// Two-colour count, root edge from a white to a black vertex; one black
/// vertex per triangle.
pub fn count_wb(b: u64, w: u64) -> BigCount {
    let (bi, wi) = (b as i64, w as i64);
    match bi + wi {
        t if t < 2 => BigUint::zero(),
        2 => BigUint::from(((b, w) == (1, 1)) as u8),
        _ => {
            let value =
                factor(1, 2 * bi + wi - 2, wi - 1) * BigRational::from_integer(binom(wi - 1, bi - 1).into());
            into_count(value, "count_wb")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn full(xs: &[u64]) -> BigCount {
        count_full(&ColourVector::new(xs.to_vec()))
    }

    fn coarse(beta: &[usize], g: &[u64]) -> BigCount {
        count_coarse(
            &Composition::new(beta.to_vec()).unwrap(),
            &CoarseColourVector::new(g.to_vec()),
        )
        .unwrap()
    }

    #[test]
    fn triangle_counts() {
        assert_eq!(count_d2(0, 1, 1), 1u32.into());
        assert_eq!(count_d2(1, 1, 1), 1u32.into());
        assert_eq!(count_d2(1, 2, 1), 1u32.into());
        assert_eq!(count_d2(2, 1, 1), 0u32.into());
        assert_eq!(count_d2(1, 2, 2), 3u32.into());
        assert_eq!(count_d2(0, 2, 2), 0u32.into());
        assert_eq!(count_d2(1, 1, 0), 0u32.into());
    }

    #[test]
    fn full_counts() {
        assert_eq!(full(&[1, 1, 1, 1]), 1u32.into());
        assert_eq!(full(&[1, 2, 1, 1]), 1u32.into());
        assert_eq!(full(&[2, 1, 1, 1]), 0u32.into());
        assert_eq!(full(&[1, 2, 2]), 3u32.into());
        assert_eq!(full(&[0, 1, 1, 1, 1]), 1u32.into());
        assert_eq!(full(&[0, 2, 1, 1]), 0u32.into());
        assert_eq!(full(&[1, 0, 3, 1]), 0u32.into());
    }

    #[test]
    fn two_colour_counts() {
        assert_eq!(count_ww(1, 3), 2u32.into());
        assert_eq!(count_ww(0, 2), 1u32.into());
        assert_eq!(count_ww(1, 1), 0u32.into());
        assert_eq!(count_wb(2, 2), 1u32.into());
        assert_eq!(count_wb(1, 2), 1u32.into());
        assert_eq!(count_wb(1, 1), 1u32.into());
        assert_eq!(count_wb(0, 2), 0u32.into());
    }

    #[test]
    fn coarse_counts() {
        assert_eq!(coarse(&[3], &[5]), 5u32.into());
        assert_eq!(coarse(&[1, 2], &[1, 3]), 2u32.into());
        assert_eq!(coarse(&[2, 1], &[2, 2]), 1u32.into());
        assert_eq!(coarse(&[2, 1], &[1, 1]), 1u32.into());
        assert_eq!(coarse(&[1, 2], &[0, 2]), 1u32.into());
    }

    #[test]
    fn coarse_length_mismatch() {
        let beta = Composition::new(vec![1, 2]).unwrap();
        let g = CoarseColourVector::new(vec![1, 1, 1]);
        assert!(matches!(count_coarse(&beta, &g), Err(CensusError::Length { .. })));
    }

    #[test]
    fn scaled_binom_rewrite() {
        let one = BigRational::one();
        // (1/4) binom(4, 2) = 3/2
        assert_eq!(scaled_binom(&one, 4, 2), Some(BigRational::new(3.into(), 2.into())));
        assert_eq!(scaled_binom(&one, 5, 0), Some(BigRational::new(1.into(), 5.into())));
        assert_eq!(scaled_binom(&one, 0, 0), None);
        assert_eq!(scaled_binom(&one, 0, 3), Some(BigRational::zero()));
        assert_eq!(scaled_binom(&one, 3, -1), Some(BigRational::zero()));
    }
}
