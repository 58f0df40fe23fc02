use std::fmt;

use serde::{Deserialize, Serialize};

use super::ComplexError;

/// Vertex multiplicities per colour `c0..=cd`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ColourVector(Vec<u64>);

impl ColourVector {
    pub fn new(counts: Vec<u64>) -> Self {
        ColourVector(counts)
    }

    pub fn d(&self) -> usize {
        self.0.len() - 1
    }

    pub fn counts(&self) -> &[u64] {
        &self.0
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    /// `s = sum - d`, the index of any complex with this colour vector.
    pub fn s(&self) -> i64 {
        self.total() as i64 - self.d() as i64
    }
}

impl fmt::Display for ColourVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}

/// Block sizes `b0..=bk` of an identification of consecutive colours; they
/// sum to `d + 1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Composition(Vec<usize>);

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self, ComplexError> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(ComplexError::InvalidComposition(parts));
        }
        Ok(Composition(parts))
    }

    /// All-ones composition of `d + 1`.
    pub fn finest(d: usize) -> Self {
        Composition(vec![1; d + 1])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// `k`, the number of blocks minus one.
    pub fn k(&self) -> usize {
        self.0.len() - 1
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// `d` for which this is a composition of `d + 1`.
    pub fn d(&self) -> usize {
        self.total() - 1
    }

    /// Every composition of `m` into positive parts, in lexicographic order.
    pub fn all_of(m: usize) -> Vec<Composition> {
        fn rec(left: usize, cur: &mut Vec<usize>, out: &mut Vec<Composition>) {
            if left == 0 {
                out.push(Composition(cur.clone()));
                return;
            }
            for p in 1..=left {
                cur.push(p);
                rec(left - p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if m > 0 {
            rec(m, &mut Vec::new(), &mut out);
        }
        out
    }
}

impl std::str::FromStr for Composition {
    type Err = ComplexError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts = s
            .split(',')
            .map(|p| p.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| ComplexError::Parse {
                pos: 0,
                msg: format!("bad composition {s:?}"),
            })?;
        Composition::new(parts)
    }
}

/// Multiplicities of the merged colours `c'0..=c'k`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CoarseColourVector(Vec<u64>);

impl CoarseColourVector {
    pub fn new(counts: Vec<u64>) -> Self {
        CoarseColourVector(counts)
    }

    pub fn k(&self) -> usize {
        self.0.len() - 1
    }

    pub fn counts(&self) -> &[u64] {
        &self.0
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }
}

impl fmt::Display for CoarseColourVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}

/// Sums `gamma` over the consecutive colour blocks given by `beta`.
pub fn coarsen(gamma: &ColourVector, beta: &Composition) -> Result<CoarseColourVector, ComplexError> {
    if gamma.d() + 1 != beta.total() {
        return Err(ComplexError::DimensionMismatch {
            expected: gamma.d() + 1,
            found: beta.total(),
        });
    }
    let mut out = Vec::with_capacity(beta.parts().len());
    let mut start = 0;
    for &len in beta.parts() {
        out.push(gamma.counts()[start..start + len].iter().sum());
        start += len;
    }
    Ok(CoarseColourVector(out))
}

fn write_tuple(f: &mut fmt::Formatter<'_>, xs: &[u64]) -> fmt::Result {
    f.write_str("(")?;
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    f.write_str(")")
}
