//! Truncated multivariate power series and the generating-function checks
//! built on them.

mod matrix;
mod multiseries;

pub use matrix::{
    esym_checks, jacobian_check, jacobian_matrix, jacobian_symbolic, random_points, RationalMatrix,
};
pub use multiseries::{Monomial, MultiSeries};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::census::count_full;
use crate::complex::ColourVector;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("series shapes differ: (vars, order) {left:?} vs {right:?}")]
    Mismatch {
        left: (usize, u32),
        right: (usize, u32),
    },
    #[error("constant term {0} is not a unit")]
    NotUnit(BigInt),
    #[error("cannot map {from} variables into {to}")]
    BadSubstitution { from: usize, to: usize },
    #[error("evaluation point is singular")]
    Singular,
}

/// Solves `g_i (1 + g_i) = x_i prod_j (1 + g_j)` for `i = 0..=d` up to total
/// degree `t`. Each pass fixes one more degree, so `t` passes starting from
/// zero are exact.
pub fn solve_g(d: usize, t: u32) -> Vec<MultiSeries> {
    let vars = d + 1;
    let one = MultiSeries::one(vars, t);
    let xs: Vec<MultiSeries> = (0..vars).map(|i| MultiSeries::var(vars, t, i)).collect();
    let mut g = vec![MultiSeries::zero(vars, t); vars];
    for _ in 0..t {
        let shifted: Vec<MultiSeries> = g.iter().map(|gi| &one + gi).collect();
        // x_i prod_j (1+g_j) / (1+g_i), with the division cancelled.
        g = (0..vars)
            .map(|i| {
                shifted
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .fold(xs[i].clone(), |acc, (_, f)| &acc * f)
            })
            .collect();
    }
    g
}

/// Residuals `g_i (1 + g_i) - x_i prod_j (1 + g_j)`.
pub fn g_residuals(g: &[MultiSeries]) -> Vec<MultiSeries> {
    let (vars, t) = (g[0].vars(), g[0].order());
    let one = MultiSeries::one(vars, t);
    let prod = g.iter().fold(one.clone(), |acc, gi| &acc * &(&one + gi));
    g.iter()
        .enumerate()
        .map(|(i, gi)| &(gi * &(&one + gi)) - &(&MultiSeries::var(vars, t, i) * &prod))
        .collect()
}

/// Generating function of rooted complexes: `x_1 ... x_d (1 + g_0)`.
pub fn series_c(d: usize, t: u32) -> MultiSeries {
    let g0 = solve_g(d, t).swap_remove(0);
    c_from_g0(&g0)
}

/// `x_1 ... x_d (1 + g_0)` for an already computed `g_0`.
pub fn c_from_g0(g0: &MultiSeries) -> MultiSeries {
    let (vars, t) = (g0.vars(), g0.order());
    let mut m = vec![1; vars];
    m[0] = 0;
    let lead = MultiSeries::monomial(vars, t, m, 1);
    &lead * &(&MultiSeries::one(vars, t) + g0)
}

fn poly(vars: usize, t: u32, terms: &[(&[u32], i64)]) -> MultiSeries {
    MultiSeries::from_terms(vars, t, terms.iter().map(|&(m, c)| (m.to_vec(), BigInt::from(c))))
}

/// Left side of the quintic satisfied by `C(a, b, c)`.
pub fn alg_d2_residual(c: &MultiSeries) -> MultiSeries {
    let t = c.order();
    let p = |terms: &[(&[u32], i64)]| poly(3, t, terms);
    let c2 = c * c;
    let c3 = &c2 * c;
    let c4 = &c3 * c;
    let c5 = &c4 * c;
    let k0 = p(&[(&[0, 3, 3], 1), (&[1, 3, 3], 1)]);
    let k1 = p(&[(&[1, 3, 2], 1), (&[1, 2, 3], 1), (&[0, 2, 2], -1)]);
    let k2 = p(&[(&[1, 2, 2], 1), (&[0, 2, 2], -2)]);
    let k3 = p(&[(&[0, 1, 1], 2)]);
    let k4 = p(&[(&[0, 1, 1], 1)]);
    let mut r = &k0 + &(&k1 * c);
    r = &r + &(&k2 * &c2);
    r = &r + &(&k3 * &c3);
    r = &r + &(&k4 * &c4);
    &r - &c5
}

/// Cubic residual for `Y = C(x, y, y)`.
pub fn y_residual(y: &MultiSeries) -> MultiSeries {
    let t = y.order();
    let p = |terms: &[(&[u32], i64)]| poly(2, t, terms);
    let y2 = y * y;
    let y3 = &y2 * y;
    let k0 = p(&[(&[0, 4], 1), (&[1, 4], 1)]);
    let k1 = p(&[(&[0, 2], -1), (&[0, 3], -2)]);
    let k2 = p(&[(&[0, 1], 2), (&[0, 2], 1)]);
    let r = &(&k0 + &(&k1 * y)) + &(&k2 * &y2);
    &r - &y3
}

/// Cubic residual for `Z = C(x, x, y)`.
pub fn z_residual(z: &MultiSeries) -> MultiSeries {
    let t = z.order();
    let p = |terms: &[(&[u32], i64)]| poly(2, t, terms);
    let z3 = &(z * z) * z;
    let k0 = p(&[(&[2, 2], 1)]);
    let k1 = p(&[(&[2, 1], 1), (&[1, 1], -1)]);
    &(&k0 + &(&k1 * z)) + &z3
}

pub fn check_alg_d2(t: u32) -> MultiSeries {
    alg_d2_residual(&series_c(2, t))
}

/// `C(x, y, y)` from the three-variable series.
pub fn series_y(t: u32) -> MultiSeries {
    series_c(2, t).substitute(&[0, 1, 1], 2).expect("valid map")
}

/// `C(x, x, y)` from the three-variable series.
pub fn series_z(t: u32) -> MultiSeries {
    series_c(2, t).substitute(&[0, 0, 1], 2).expect("valid map")
}

pub fn check_y(t: u32) -> MultiSeries {
    y_residual(&series_y(t))
}

pub fn check_z(t: u32) -> MultiSeries {
    z_residual(&series_z(t))
}

fn factorial(n: i64) -> Option<BigInt> {
    if n < 0 {
        return None;
    }
    Some((1..=n).fold(BigInt::one(), |acc, k| acc * k))
}

/// Closed form for the coefficient of `x^gamma` in `g_0`. A negative factorial
/// argument anywhere makes the value zero.
pub fn g0_closed_form(gamma: &[u64]) -> BigRational {
    let d = gamma.len() as i64 - 1;
    let total: i64 = gamma.iter().map(|&g| g as i64).sum();
    let g0 = gamma[0] as i64;
    let mut num = vec![total - g0];
    let mut den = vec![g0 - 1, total + 1 - 2 * g0];
    for &gj in &gamma[1..] {
        let gj = gj as i64;
        num.push(total - gj - 1);
        den.push(gj);
        den.push(total - 2 * gj);
    }
    let mut value = BigRational::from_integer(num_traits::pow(BigInt::from(total), (d - 1) as usize));
    for n in num {
        match factorial(n) {
            Some(f) => value *= BigRational::from_integer(f),
            None => return BigRational::zero(),
        }
    }
    for n in den {
        match factorial(n) {
            Some(f) => value /= BigRational::from_integer(f),
            None => return BigRational::zero(),
        }
    }
    value
}

/// Outcome of comparing series coefficients with the closed formulas.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BridgeReport {
    pub cases: usize,
    pub mismatches: Vec<Monomial>,
}

/// Checks `[x^gamma] g_0` against [`g0_closed_form`] for `1 <= |gamma| <= max`,
/// and `[x^gamma] C` against `count_full(gamma)` for `|gamma| <= max`.
pub fn g0_bridge(d: usize, max: u32) -> BridgeReport {
    let g0 = solve_g(d, max).swap_remove(0);
    let c = c_from_g0(&g0);
    let mut report = BridgeReport {
        cases: 0,
        mismatches: Vec::new(),
    };
    for m in monomials_up_to(d + 1, max) {
        let gamma: Vec<u64> = m.iter().map(|&e| e as u64).collect();
        if m.iter().any(|&e| e > 0) {
            report.cases += 1;
            if BigRational::from_integer(g0.coefficient(&m)) != g0_closed_form(&gamma) {
                report.mismatches.push(m.clone());
            }
        }
        report.cases += 1;
        let count = BigInt::from(count_full(&ColourVector::new(gamma)));
        if c.coefficient(&m) != count {
            report.mismatches.push(m);
        }
    }
    report
}

/// Every exponent vector in `vars` variables of total degree at most `max`.
pub fn monomials_up_to(vars: usize, max: u32) -> Vec<Monomial> {
    fn rec(vars: usize, left: u32, cur: &mut Monomial, out: &mut Vec<Monomial>) {
        if cur.len() == vars {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur.push(e);
            rec(vars, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(vars, max, &mut Vec::with_capacity(vars), &mut out);
    out
}
