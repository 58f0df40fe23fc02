//! Closed counting formulas, the brute-force census oracle and the two
//! binomial convolution identities behind the colour-merging induction.

mod formula;
mod rothe;
mod table;

pub use formula::{count_coarse, count_d2, count_full, count_wb, count_ww};
pub use rothe::{rothe_first, rothe_first_laurent, rothe_second, rothe_second_laurent, Laurent, RotheSides};
pub use table::{
    census_coarse_enumerated, census_coarse_formula, census_enumerated, census_formula,
    coarse_from_full, CensusTable, DEFAULT_ORACLE_CAP,
};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use thiserror::Error;

use crate::complex::ComplexError;

/// Exact non-negative count.
pub type BigCount = BigUint;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CensusError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("census of {count} complexes exceeds the oracle cap {cap}")]
    CapExceeded { count: BigUint, cap: u64 },
    #[error("colour vector has {found} entries, composition has {expected} blocks")]
    Length { expected: usize, found: usize },
    #[error("convolution parameters out of range: {0}")]
    Parameters(String),
    #[error("both sides have a pole at s = 0")]
    Pole,
}

/// Combinatorial binomial coefficient: zero when `m < 0`, `k < 0` or `k > m`.
pub fn binom(m: i64, k: i64) -> BigCount {
    if m < 0 || k < 0 || k > m {
        return BigUint::zero();
    }
    let k = k.min(m - k) as u64;
    let m = m as u64;
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= m - i;
        acc /= i + 1;
    }
    acc
}

/// Polynomial binomial `m(m-1)...(m-k+1)/k!`, defined for every integer `m`;
/// zero for `k < 0`.
pub fn binom_general(m: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= m - i;
        acc /= i + 1;
    }
    acc
}

/// `C_n = binom(2n, n) / (n + 1)`.
pub fn catalan(n: u64) -> BigCount {
    binom(2 * n as i64, n as i64) / (n + 1)
}

/// `binom(dn, n-1) / n`, and 1 at `n = 0`.
pub fn fuss_catalan(d: u64, n: u64) -> BigCount {
    if n == 0 {
        return BigUint::one();
    }
    binom((d * n) as i64, n as i64 - 1) / n
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binom_conventions() {
        assert_eq!(binom(5, 2), 10u32.into());
        assert_eq!(binom(1, 2), BigUint::zero());
        assert_eq!(binom(-1, 0), BigUint::zero());
        assert_eq!(binom(4, -1), BigUint::zero());
        assert_eq!(binom(0, 0), BigUint::one());
        assert_eq!(binom(60, 30), "118264581564861424".parse().unwrap());
    }

    #[test]
    fn general_binom_matches_on_naturals_and_extends() {
        for m in 0..12 {
            for k in 0..14 {
                assert_eq!(binom_general(m, k), BigInt::from(binom(m, k)));
            }
        }
        assert_eq!(binom_general(-1, 0), BigInt::one());
        assert_eq!(binom_general(-1, 3), BigInt::from(-1));
        assert_eq!(binom_general(-2, 2), BigInt::from(3));
        assert_eq!(binom_general(3, -1), BigInt::zero());
    }

    #[test]
    fn catalan_list() {
        let listed = [1u64, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796, 58786];
        for (n, &c) in listed.iter().enumerate() {
            assert_eq!(catalan(n as u64), c.into());
            assert_eq!(fuss_catalan(2, n as u64), c.into());
        }
        assert_eq!(catalan(12), 208012u32.into());
    }

    #[test]
    fn fuss_catalan_values() {
        assert_eq!(fuss_catalan(2, 5), 42u32.into());
        assert_eq!(fuss_catalan(3, 6), 1428u32.into());
        assert_eq!(fuss_catalan(3, 3), 12u32.into());
        // (1/5) binom(15, 4) = 1365 / 5
        assert_eq!(fuss_catalan(3, 5), 273u32.into());
        assert_eq!(fuss_catalan(4, 4), 140u32.into());
        assert_eq!(fuss_catalan(7, 0), 1u32.into());
    }
}
