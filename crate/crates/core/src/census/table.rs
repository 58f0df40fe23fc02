use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::Serialize;

use super::{count_coarse, count_full, fuss_catalan, BigCount, CensusError};
use crate::complex::{
    build_complex, coarsen, enumerate_trees, CoarseColourVector, ColourVector, Composition,
};

/// Refuse brute-force censuses larger than this many complexes.
pub const DEFAULT_ORACLE_CAP: u64 = 10_000_000;

/// Counts per colour vector (full or coarse) for fixed `d` and `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusTable {
    d: usize,
    n: usize,
    beta: Option<Composition>,
    entries: BTreeMap<Vec<u64>, BigCount>,
}

impl CensusTable {
    fn new(d: usize, n: usize, beta: Option<Composition>) -> Self {
        CensusTable {
            d,
            n,
            beta,
            entries: BTreeMap::new(),
        }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn beta(&self) -> Option<&Composition> {
        self.beta.as_ref()
    }

    /// Nonzero entries keyed by colour vector.
    pub fn entries(&self) -> &BTreeMap<Vec<u64>, BigCount> {
        &self.entries
    }

    pub fn get(&self, gamma: &[u64]) -> BigCount {
        self.entries.get(gamma).cloned().unwrap_or_default()
    }

    pub fn total(&self) -> BigCount {
        self.entries.values().sum()
    }

    fn add(&mut self, gamma: Vec<u64>, count: BigCount) {
        if count.is_zero() {
            return;
        }
        *self.entries.entry(gamma).or_default() += count;
    }

    /// Adds another table for the same `(d, n, beta)` entrywise.
    pub fn merge(&mut self, other: CensusTable) {
        assert_eq!((self.d, self.n, &self.beta), (other.d, other.n, &other.beta));
        for (g, c) in other.entries {
            self.add(g, c);
        }
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Entry<'a> {
            gamma: &'a [u64],
            count: String,
        }
        #[derive(Serialize)]
        struct Doc<'a> {
            d: usize,
            n: usize,
            #[serde(skip_serializing_if = "Option::is_none")]
            beta: Option<&'a [usize]>,
            entries: Vec<Entry<'a>>,
            total: String,
        }
        let doc = Doc {
            d: self.d,
            n: self.n,
            beta: self.beta.as_ref().map(Composition::parts),
            entries: self
                .entries
                .iter()
                .map(|(g, c)| Entry {
                    gamma: g,
                    count: c.to_string(),
                })
                .collect(),
            total: self.total().to_string(),
        };
        serde_json::to_string_pretty(&doc).expect("census serializes")
    }

    /// One row per entry: `gamma_0,...,gamma_k,count`.
    pub fn to_csv(&self) -> String {
        let width = self.beta.as_ref().map_or(self.d + 1, |b| b.parts().len());
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header: Vec<String> = (0..width).map(|i| format!("gamma_{i}")).collect();
        header.push("count".into());
        w.write_record(&header).expect("in-memory csv");
        for (g, c) in &self.entries {
            let mut row: Vec<String> = g.iter().map(u64::to_string).collect();
            row.push(c.to_string());
            w.write_record(&row).expect("in-memory csv");
        }
        String::from_utf8(w.into_inner().expect("in-memory csv")).expect("ascii csv")
    }
}

/// All vectors of `parts` non-negative integers summing to `total`, in
/// lexicographic order.
fn weak_compositions(total: u64, parts: usize, mut f: impl FnMut(&[u64])) {
    fn rec(left: u64, slots: usize, cur: &mut Vec<u64>, f: &mut dyn FnMut(&[u64])) {
        if slots == 1 {
            cur.push(left);
            f(cur);
            cur.pop();
            return;
        }
        for x in 0..=left {
            cur.push(x);
            rec(left - x, slots - 1, cur, f);
            cur.pop();
        }
    }
    rec(total, parts, &mut Vec::with_capacity(parts), &mut f);
}

/// Full census from the closed formula.
pub fn census_formula(d: usize, n: usize) -> Result<CensusTable, CensusError> {
    crate::complex::check_dimension(d)?;
    let mut table = CensusTable::new(d, n, None);
    weak_compositions((n + d) as u64, d + 1, |g| {
        table.add(g.to_vec(), count_full(&ColourVector::new(g.to_vec())));
    });
    Ok(table)
}

/// Coarse census from the closed formula.
pub fn census_coarse_formula(d: usize, n: usize, beta: &Composition) -> Result<CensusTable, CensusError> {
    check_beta(d, beta)?;
    let mut table = CensusTable::new(d, n, Some(beta.clone()));
    let mut result = Ok(());
    weak_compositions((n + d) as u64, beta.parts().len(), |g| {
        match count_coarse(beta, &CoarseColourVector::new(g.to_vec())) {
            Ok(c) => table.add(g.to_vec(), c),
            Err(e) => result = Err(e),
        }
    });
    result.map(|_| table)
}

/// Coarse census obtained by block-summing a full census.
pub fn coarse_from_full(full: &CensusTable, beta: &Composition) -> Result<CensusTable, CensusError> {
    check_beta(full.d, beta)?;
    let mut table = CensusTable::new(full.d, full.n, Some(beta.clone()));
    for (g, c) in &full.entries {
        let coarse = coarsen(&ColourVector::new(g.clone()), beta)?;
        table.add(coarse.counts().to_vec(), c.clone());
    }
    Ok(table)
}

fn check_cap(d: usize, n: usize, cap: u64) -> Result<(), CensusError> {
    let count = fuss_catalan(d as u64, n as u64);
    if count > BigUint::from(cap) {
        return Err(CensusError::CapExceeded { count, cap });
    }
    Ok(())
}

fn check_beta(d: usize, beta: &Composition) -> Result<(), CensusError> {
    crate::complex::check_dimension(d)?;
    if beta.total() != d + 1 {
        return Err(crate::complex::ComplexError::DimensionMismatch {
            expected: d + 1,
            found: beta.total(),
        }
        .into());
    }
    Ok(())
}

/// Full census by building and colouring every complex.
pub fn census_enumerated(d: usize, n: usize, cap: u64) -> Result<CensusTable, CensusError> {
    let trees = enumerate_trees(d, n)?;
    check_cap(d, n, cap)?;
    let mut counts: BTreeMap<Vec<u64>, u64> = BTreeMap::new();
    for t in trees {
        let gamma = build_complex(&t).colour_vector();
        *counts.entry(gamma.counts().to_vec()).or_default() += 1;
    }
    let mut table = CensusTable::new(d, n, None);
    for (g, c) in counts {
        table.add(g, c.into());
    }
    Ok(table)
}

/// Coarse census by building, colouring and block-summing every complex.
pub fn census_coarse_enumerated(
    d: usize,
    n: usize,
    beta: &Composition,
    cap: u64,
) -> Result<CensusTable, CensusError> {
    check_beta(d, beta)?;
    let trees = enumerate_trees(d, n)?;
    check_cap(d, n, cap)?;
    let mut counts: BTreeMap<Vec<u64>, u64> = BTreeMap::new();
    for t in trees {
        let coarse = coarsen(&build_complex(&t).colour_vector(), beta)?;
        *counts.entry(coarse.counts().to_vec()).or_default() += 1;
    }
    let mut table = CensusTable::new(d, n, Some(beta.clone()));
    for (g, c) in counts {
        table.add(g, c.into());
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(x: u64) -> BigCount {
        x.into()
    }

    #[test]
    fn pentagon_census() {
        let t = census_enumerated(2, 3, DEFAULT_ORACLE_CAP).unwrap();
        assert_eq!(t.entries().len(), 3);
        assert_eq!(t.get(&[1, 2, 2]), big(3));
        assert_eq!(t.get(&[2, 2, 1]), big(1));
        assert_eq!(t.get(&[2, 1, 2]), big(1));
        assert_eq!(t.total(), big(5));
        assert_eq!(t, census_formula(2, 3).unwrap());
    }

    #[test]
    fn index_two_in_dimension_three() {
        let t = census_enumerated(3, 2, DEFAULT_ORACLE_CAP).unwrap();
        assert_eq!(t.entries().len(), 3);
        for g in [[1, 2, 1, 1], [1, 1, 2, 1], [1, 1, 1, 2]] {
            assert_eq!(t.get(&g), big(1));
        }
    }

    #[test]
    fn index_zero_census() {
        let t = census_enumerated(2, 0, DEFAULT_ORACLE_CAP).unwrap();
        assert_eq!(t.entries().len(), 1);
        assert_eq!(t.get(&[0, 1, 1]), big(1));
        assert_eq!(t, census_formula(2, 0).unwrap());
    }

    #[test]
    fn cap_is_enforced() {
        let err = census_enumerated(2, 10, 1000).unwrap_err();
        assert!(matches!(err, CensusError::CapExceeded { cap: 1000, .. }));
        assert!(census_enumerated(2, 10, 16796).is_ok());
    }

    #[test]
    fn coarse_paths_agree() {
        let beta = Composition::new(vec![1, 2]).unwrap();
        let full = census_formula(2, 4).unwrap();
        let a = coarse_from_full(&full, &beta).unwrap();
        let b = census_coarse_formula(2, 4, &beta).unwrap();
        let c = census_coarse_enumerated(2, 4, &beta, DEFAULT_ORACLE_CAP).unwrap();
        assert_eq!(a, b);
        assert_eq!(b, c);
        assert_eq!(c.total(), big(14));
    }

    #[test]
    fn wrong_beta_is_rejected() {
        let beta = Composition::new(vec![1, 1]).unwrap();
        assert!(census_coarse_formula(2, 3, &beta).is_err());
        assert!(census_coarse_enumerated(2, 3, &beta, 100).is_err());
    }

    #[test]
    fn serializations() {
        let t = census_formula(2, 3).unwrap();
        let v: serde_json::Value = serde_json::from_str(&t.to_json()).unwrap();
        assert_eq!(v["total"], "5");
        assert!(v.get("beta").is_none());
        assert_eq!(v["entries"][0]["gamma"], serde_json::json!([1, 2, 2]));
        assert_eq!(v["entries"][0]["count"], "3");

        let csv = t.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "gamma_0,gamma_1,gamma_2,count");
        assert_eq!(lines[1], "1,2,2,3");
        assert_eq!(lines.len(), 4);

        let beta = Composition::new(vec![2, 1]).unwrap();
        let t = census_coarse_formula(2, 2, &beta).unwrap();
        let v: serde_json::Value = serde_json::from_str(&t.to_json()).unwrap();
        assert_eq!(v["beta"], serde_json::json!([2, 1]));
    }
}
