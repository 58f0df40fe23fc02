use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{MultiSeries, SeriesError};

/// Square matrix of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: Vec<Vec<BigRational>>,
}

impl RationalMatrix {
    pub fn new(rows: Vec<Vec<BigRational>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        RationalMatrix { rows }
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> BigRational) -> Self {
        RationalMatrix::new((0..n).map(|i| (0..n).map(|j| f(i, j)).collect()).collect())
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.rows[i][j]
    }

    /// Determinant by clearing each row's denominators and running Bareiss
    /// fraction-free elimination on the resulting integer matrix.
    pub fn determinant(&self) -> BigRational {
        let n = self.size();
        if n == 0 {
            return BigRational::one();
        }
        let mut scale = BigInt::one();
        let mut m: Vec<Vec<BigInt>> = self
            .rows
            .iter()
            .map(|row| {
                let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                scale *= &l;
                row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
            })
            .collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(i) => {
                        m.swap(k, i);
                        sign = -sign;
                    }
                    None => return BigRational::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = v / &prev;
                }
            }
            prev = m[k][k].clone();
        }
        BigRational::new(sign * &m[n - 1][n - 1], scale)
    }
}

fn check_point(point: &[BigRational]) -> Result<(), SeriesError> {
    let one = BigRational::one();
    let two = BigRational::from_integer(2.into());
    let bad = point
        .iter()
        .any(|x| (&one + x).is_zero() || (&one + &two * x).is_zero());
    if point.is_empty() || bad {
        return Err(SeriesError::Singular);
    }
    Ok(())
}

/// The Jacobian of `x_i -> x_i (1 + x_i) / prod_k (1 + x_k)` at `point`.
pub fn jacobian_matrix(point: &[BigRational]) -> Result<RationalMatrix, SeriesError> {
    check_point(point)?;
    let one = BigRational::one();
    let shifted: Vec<BigRational> = point.iter().map(|x| &one + x).collect();
    let prod: BigRational = shifted.iter().product();
    Ok(RationalMatrix::from_fn(point.len(), |i, j| {
        if i == j {
            &shifted[i] / &prod
        } else {
            -(&point[i] * &shifted[i]) / (&shifted[j] * &prod)
        }
    }))
}

/// Determinant of the Jacobian and its closed form, both evaluated exactly.
pub fn jacobian_check(point: &[BigRational]) -> Result<(BigRational, BigRational), SeriesError> {
    let lhs = jacobian_matrix(point)?.determinant();
    let one = BigRational::one();
    let two = BigRational::from_integer(2.into());
    let n = point.len();
    let mut factor = one.clone();
    let mut prod = one.clone();
    for x in point {
        let doubled = &one + &two * x;
        factor -= x / &doubled;
        prod *= doubled / num_traits::pow(&one + x, n);
    }
    Ok((lhs, factor * prod))
}

/// Determinant of `M` with `M_ii = 1 + x_i`, `M_ij = -x_i`, expanded as a
/// polynomial by the Leibniz formula.
fn reduced_determinant(vars: usize) -> MultiSeries {
    let order = vars as u32;
    let one = MultiSeries::one(vars, order);
    let entry = |i: usize, j: usize| {
        let x = MultiSeries::var(vars, order, i);
        if i == j {
            &one + &x
        } else {
            -&x
        }
    };
    let mut total = MultiSeries::zero(vars, order);
    let mut perm: Vec<usize> = (0..vars).collect();
    permutations(&mut perm, 0, &mut |p| {
        let term = (0..vars).fold(one.clone(), |acc, i| &acc * &entry(i, p[i]));
        total = if parity(p) { &total - &term } else { &total + &term };
    });
    total
}

fn permutations(p: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, f);
        p.swap(k, i);
    }
}

/// True for odd permutations.
fn parity(p: &[usize]) -> bool {
    let mut odd = false;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                odd = !odd;
            }
        }
    }
    odd
}

/// Symbolic form of the determinant identity with denominators cleared:
/// `det M = prod (1 + 2x_j) - sum_k x_k prod_{j != k} (1 + 2x_j)
///        = sum_k 2^{k-1} (2 - k) e_k`.
pub fn jacobian_symbolic(d: usize) -> bool {
    let vars = d + 1;
    let order = vars as u32;
    let one = MultiSeries::one(vars, order);
    let two = BigInt::from(2);
    let lin: Vec<MultiSeries> = (0..vars)
        .map(|j| &one + &MultiSeries::var(vars, order, j).scale(&two))
        .collect();
    let full = lin.iter().fold(one.clone(), |acc, f| &acc * f);
    let mut closed = full;
    for k in 0..vars {
        let rest = lin
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != k)
            .fold(MultiSeries::var(vars, order, k), |acc, (_, f)| &acc * f);
        closed = &closed - &rest;
    }
    // sum over subsets S of 2^{|S|-1} (2 - |S|) x^S
    let mut esym = MultiSeries::zero(vars, order);
    for mask in 0u32..(1 << vars) {
        let k = mask.count_ones() as i64;
        let m: Vec<u32> = (0..vars).map(|i| (mask >> i) & 1).collect();
        let coeff = match k {
            0 => BigInt::one(),
            _ => BigInt::from(2 - k) << (k - 1) as usize,
        };
        esym = &esym + &MultiSeries::monomial(vars, order, m, coeff);
    }
    let det = reduced_determinant(vars);
    det == closed && det == esym
}

fn elementary_symmetric(values: &[BigRational]) -> Vec<BigRational> {
    let mut e = vec![BigRational::zero(); values.len() + 1];
    for mask in 0u64..(1 << values.len()) {
        let term: BigRational = values
            .iter()
            .enumerate()
            .filter(|&(i, _)| (mask >> i) & 1 == 1)
            .map(|(_, x)| x.clone())
            .product();
        e[mask.count_ones() as usize] += term;
    }
    e
}

fn shifted_all_ones(k: usize, lambda: &BigRational) -> BigRational {
    RationalMatrix::from_fn(k, |i, j| {
        if i == j {
            lambda - BigRational::one()
        } else {
            -BigRational::one()
        }
    })
    .determinant()
}

/// Elementary symmetric function identities at `t = 2`, the all-ones
/// determinant formula for every `k <= values.len()`, and the principal-minor
/// expansion of the reduced Jacobian determinant.
pub fn esym_checks(values: &[BigRational]) -> bool {
    let one = BigRational::one();
    let two = BigRational::from_integer(2.into());
    let e = elementary_symmetric(values);
    let pow2 = |k: usize| num_traits::pow(two.clone(), k);

    let lhs: BigRational = e.iter().enumerate().map(|(k, ek)| ek * pow2(k)).sum();
    let lin: Vec<BigRational> = values.iter().map(|x| &one + &two * x).collect();
    let rhs: BigRational = lin.iter().product();
    let generating = lhs == rhs;

    let dlhs: BigRational = e
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, ek)| ek * BigRational::from_integer(k.into()) * pow2(k - 1))
        .sum();
    let drhs: BigRational = (0..values.len())
        .map(|k| {
            lin.iter()
                .enumerate()
                .filter(|&(j, _)| j != k)
                .fold(values[k].clone(), |acc, (_, f)| acc * f)
        })
        .sum();
    let derivative = dlhs == drhs;

    let mut lambdas = vec![two.clone()];
    lambdas.extend(values.iter().cloned());
    let all_ones = (1..=values.len()).all(|k| {
        lambdas.iter().all(|lambda| {
            let kk = BigRational::from_integer(k.into());
            shifted_all_ones(k, lambda) == num_traits::pow(lambda.clone(), k - 1) * (lambda - kk)
        })
    });

    let n = values.len();
    let reduced = RationalMatrix::from_fn(n, |i, j| {
        if i == j {
            &one + &values[i]
        } else {
            -values[i].clone()
        }
    })
    .determinant();
    let minors: BigRational = e
        .iter()
        .enumerate()
        .map(|(k, ek)| {
            let c = BigRational::from_integer(BigInt::from(2 - k as i64)) * pow2(k) / &two;
            ek * c
        })
        .sum();
    let principal = reduced == minors;

    generating && derivative && all_ones && principal
}

/// `trials` seeded random points with `d + 1` rational coordinates (numerators
/// in -20..=20, denominators in 1..=20), skipping singular points.
pub fn random_points(d: usize, trials: usize, seed: u64) -> Vec<Vec<BigRational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(trials);
    while out.len() < trials {
        let point: Vec<BigRational> = (0..=d)
            .map(|_| {
                let num: i64 = rng.gen_range(-20..=20);
                let den: i64 = rng.gen_range(1..=20);
                BigRational::new(num.into(), den.into())
            })
            .collect();
        if check_point(&point).is_ok() {
            out.push(point);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn int_matrix(rows: &[&[i64]]) -> RationalMatrix {
        RationalMatrix::new(rows.iter().map(|r| r.iter().map(|&x| q(x, 1)).collect()).collect())
    }

    #[test]
    fn small_determinants() {
        assert_eq!(int_matrix(&[&[1, -1], &[-1, 1]]).determinant(), q(0, 1));
        assert_eq!(
            int_matrix(&[&[1, -1, -1], &[-1, 1, -1], &[-1, -1, 1]]).determinant(),
            q(-4, 1)
        );
        // needs a pivot swap
        assert_eq!(int_matrix(&[&[0, 1], &[1, 0]]).determinant(), q(-1, 1));
        let m = RationalMatrix::new(vec![vec![q(1, 2), q(1, 3)], vec![q(1, 4), q(1, 5)]]);
        assert_eq!(m.determinant(), q(1, 10) - q(1, 12));
    }

    #[test]
    fn jacobian_examples() {
        let (l, r) = jacobian_check(&[q(5, 7)]).unwrap();
        assert_eq!((l, r), (q(1, 1), q(1, 1)));
        let (l, r) = jacobian_check(&[q(1, 1), q(1, 1), q(1, 1)]).unwrap();
        assert_eq!(l, r);
        // 1 - 3 * (1/3) = 0
        assert_eq!(l, q(0, 1));
        assert_eq!(jacobian_check(&[q(-1, 1), q(1, 1)]), Err(SeriesError::Singular));
        assert_eq!(jacobian_check(&[q(-1, 2), q(1, 1)]), Err(SeriesError::Singular));
    }

    #[test]
    fn random_points_are_seeded() {
        assert_eq!(random_points(3, 5, 7), random_points(3, 5, 7));
        assert_ne!(random_points(3, 5, 7), random_points(3, 5, 8));
        for p in random_points(5, 100, 7) {
            let (l, r) = jacobian_check(&p).unwrap();
            assert_eq!(l, r);
        }
    }

    #[test]
    fn symbolic_small_d() {
        for d in 0..=3 {
            assert!(jacobian_symbolic(d), "d={d}");
        }
    }

    #[test]
    fn esym_examples() {
        assert!(esym_checks(&[q(1, 1), q(1, 1)]));
        assert_eq!(shifted_all_ones(2, &q(2, 1)), q(0, 1));
        assert_eq!(shifted_all_ones(3, &q(2, 1)), q(-4, 1));
        assert!(esym_checks(&[q(-3, 4), q(2, 5), q(7, 1), q(0, 1)]));
    }
}
