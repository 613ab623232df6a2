use std::collections::BTreeMap;

use super::SymbolArray;
use crate::error::{Error, Result};

/// Row multiplicities of an array.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicityCensus {
    pub counts: BTreeMap<Vec<u8>, usize>,
    pub max_multiplicity: usize,
    pub is_simple: bool,
    pub distinct_count: usize,
}

impl MultiplicityCensus {
    pub fn of(a: &SymbolArray) -> Self {
        let mut counts = BTreeMap::new();
        for row in a.rows() {
            *counts.entry(row.to_vec()).or_insert(0usize) += 1;
        }
        let max_multiplicity = counts.values().copied().max().unwrap_or(0);
        MultiplicityCensus {
            distinct_count: counts.len(),
            is_simple: max_multiplicity == 1,
            max_multiplicity,
            counts,
        }
    }

    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }

    /// Whether every distinct row occurs exactly `m` times.
    pub fn is_uniform(&self, m: usize) -> bool {
        self.counts.values().all(|&c| c == m)
    }
}

/// `c[w]` = number of rows of Hamming weight `w`, for `w = 0..=k`.
pub fn weight_enumerator(a: &SymbolArray) -> Result<Vec<u64>> {
    if a.symbols() != 2 {
        return Err(Error::param(format!(
            "weight enumerator needs s = 2, array has s = {}",
            a.symbols()
        )));
    }
    let mut c = vec![0u64; a.num_cols() + 1];
    for row in a.rows() {
        c[row.iter().filter(|&&x| x != 0).count()] += 1;
    }
    Ok(c)
}
