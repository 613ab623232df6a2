//! Exhaustive backtracking search for orthogonal arrays at small parameters.
//!
//! Rows are chosen one at a time from the `s^k` candidate tuples, in
//! nondecreasing lexicographic order (strictly increasing for simple arrays),
//! with one counter per (column subset, tuple) that may never exceed lambda.
//! Two symmetry reductions are applied, both of which preserve existence:
//!
//! - translation: adding a fixed tuple to every row modulo `s` maps an OA to
//!   an OA with the same multiplicities, so some array contains the zero row;
//! - row order: an array is a multiset of rows, so its rows may be sorted.
//!
//! Together they fix the first row to all zeros. Column permutations are not
//! used.
//!
//! The subtrees below the second row are independent and may be explored in
//! parallel. The reported array is always the lexicographically least one
//! the sequential search would find first, and `nodes_visited` counts only
//! the subtrees the sequential search would have entered.

use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::sync::Arc;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::array::{verify_strength, MultiplicityCensus, SymbolArray};
use crate::error::{Error, Result};

/// Default node budget.
pub const DEFAULT_BUDGET: u64 = 1_000_000_000;

/// Largest number of candidate rows (`s^k`) the search accepts.
pub const MAX_CANDIDATES: usize = 1 << 12;

pub type ProgressFn = Arc<dyn Fn(u64) + Send + Sync>;

#[derive(Clone)]
pub struct SearchOptions {
    pub budget: u64,
    pub parallel: bool,
    /// Called with the running node count roughly every `progress_interval`
    /// nodes.
    pub progress: Option<ProgressFn>,
    pub progress_interval: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: DEFAULT_BUDGET,
            parallel: true,
            progress: None,
            progress_interval: 1 << 24,
        }
    }
}

impl std::fmt::Debug for SearchOptions {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SearchOptions")
            .field("budget", &self.budget)
            .field("parallel", &self.parallel)
            .field("progress_interval", &self.progress_interval)
            .finish()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub n: usize,
    pub found: Option<SymbolArray>,
    /// No array exists; set exactly when `found` is `None`.
    pub exhausted: bool,
    pub nodes_visited: u64,
    pub symmetry_assumptions: Vec<String>,
    /// Why the search ended without exploring, if it did.
    pub reason: Option<String>,
}

fn symmetry_notes(simple_only: bool) -> Vec<String> {
    vec![
        "first row is all zeros (translation by a fixed row modulo s preserves strength and multiplicities)".into(),
        if simple_only {
            "rows strictly increasing in lexicographic order (an array is a set of distinct rows)".into()
        } else {
            "rows nondecreasing in lexicographic order (an array is a multiset of rows)".into()
        },
    ]
}

struct Problem {
    n: usize,
    lambda: u32,
    simple: bool,
    num_cand: usize,
    num_counters: usize,
    /// `touches[r]`: counter index of candidate `r` in each column subset.
    touches: Vec<Vec<u32>>,
    /// `avail[c * (num_cand + 1) + from]`: candidates `>= from` hitting counter `c`.
    avail: Vec<u32>,
}

impl Problem {
    fn new(n: usize, k: usize, s: usize, t: usize, simple: bool) -> Result<Self> {
        let num_cand = s
            .checked_pow(k as u32)
            .filter(|&c| c <= MAX_CANDIDATES)
            .ok_or_else(|| Error::param(format!("{s}^{k} candidate rows exceed {MAX_CANDIDATES}")))?;
        let st = s.pow(t as u32);
        let subsets: Vec<Vec<usize>> = (0..k).combinations(t).collect();
        let num_counters = subsets.len() * st;
        if num_counters.saturating_mul(num_cand + 1) > 1 << 24 {
            return Err(Error::param("search tables would be too large"));
        }
        let digits = |r: usize| -> Vec<usize> {
            let mut d = vec![0; k];
            let mut x = r;
            for j in (0..k).rev() {
                d[j] = x % s;
                x /= s;
            }
            d
        };
        let touches: Vec<Vec<u32>> = (0..num_cand)
            .map(|r| {
                let d = digits(r);
                subsets
                    .iter()
                    .enumerate()
                    .map(|(i, cols)| {
                        let code = cols.iter().fold(0, |acc, &c| acc * s + d[c]);
                        (i * st + code) as u32
                    })
                    .collect()
            })
            .collect();
        let stride = num_cand + 1;
        let mut avail = vec![0u32; num_counters * stride];
        for from in (0..num_cand).rev() {
            for c in 0..num_counters {
                avail[c * stride + from] = avail[c * stride + from + 1];
            }
            for &c in &touches[from] {
                avail[c as usize * stride + from] += 1;
            }
        }
        Ok(Problem {
            n,
            lambda: (n / st) as u32,
            simple,
            num_cand,
            num_counters,
            touches,
            avail,
        })
    }

    fn fits(&self, counts: &[u32], r: usize) -> bool {
        self.touches[r].iter().all(|&c| counts[c as usize] < self.lambda)
    }

    fn apply(&self, counts: &mut [u32], r: usize, delta: i32) {
        for &c in &self.touches[r] {
            counts[c as usize] = (counts[c as usize] as i32 + delta) as u32;
        }
    }

    /// Every unmet counter can still be filled from candidates `>= from`.
    fn completable(&self, counts: &[u32], from: usize) -> bool {
        let stride = self.num_cand + 1;
        (0..self.num_counters).all(|c| {
            let deficit = self.lambda - counts[c];
            if deficit == 0 {
                return true;
            }
            let avail = if from <= self.num_cand { self.avail[c * stride + from] } else { 0 };
            if self.simple {
                avail >= deficit
            } else {
                avail >= 1
            }
        })
    }

    fn next_from(&self, r: usize) -> usize {
        if self.simple {
            r + 1
        } else {
            r
        }
    }
}

struct Shared<'a> {
    opts: &'a SearchOptions,
    nodes: AtomicU64,
    /// Lowest subtree index known to contain a solution.
    best: AtomicUsize,
}

enum Walk {
    Found,
    Exhausted,
    Aborted,
    OverBudget,
}

struct Worker<'a> {
    p: &'a Problem,
    shared: &'a Shared<'a>,
    subtree: usize,
    counts: Vec<u32>,
    rows: Vec<usize>,
    nodes: u64,
    /// Nodes not yet added to the shared counter.
    pending: u64,
}

impl Worker<'_> {
    fn tick(&mut self) -> Option<Walk> {
        self.nodes += 1;
        self.pending += 1;
        let shared = self.shared;
        if shared.nodes.load(Ordering::Relaxed) + self.pending > shared.opts.budget {
            return Some(Walk::OverBudget);
        }
        if self.pending == 4096 {
            let total = shared.nodes.fetch_add(self.pending, Ordering::Relaxed) + self.pending;
            self.pending = 0;
            if let Some(cb) = &shared.opts.progress {
                if total % shared.opts.progress_interval < 4096 {
                    cb(total);
                }
            }
            if shared.best.load(Ordering::Relaxed) < self.subtree {
                return Some(Walk::Aborted);
            }
        }
        None
    }

    fn dfs(&mut self, from: usize) -> Walk {
        if self.rows.len() == self.p.n {
            return Walk::Found;
        }
        for r in from..self.p.num_cand {
            if !self.p.fits(&self.counts, r) {
                continue;
            }
            if let Some(stop) = self.tick() {
                return stop;
            }
            self.p.apply(&mut self.counts, r, 1);
            self.rows.push(r);
            let next = self.p.next_from(r);
            if self.p.completable(&self.counts, next) {
                match self.dfs(next) {
                    Walk::Exhausted => {}
                    other => return other,
                }
            }
            self.rows.pop();
            self.p.apply(&mut self.counts, r, -1);
        }
        Walk::Exhausted
    }
}

/// Searches for an `OA(N, k, s, t)`, optionally with distinct rows.
///
/// Returns an outcome with either a verified array or an exhaustion
/// certificate; running out of budget is an error, never an exhaustion.
pub fn exists_oa(
    n: usize,
    k: usize,
    s: u8,
    t: usize,
    simple_only: bool,
    opts: &SearchOptions,
) -> Result<SearchOutcome> {
    if k == 0 || s < 2 || t > k || n == 0 {
        return Err(Error::param(format!(
            "search needs N >= 1, k >= 1, s >= 2, t <= k; got N = {n}, k = {k}, s = {s}, t = {t}"
        )));
    }
    let symmetry_assumptions = symmetry_notes(simple_only);
    let infeasible = |reason: String| SearchOutcome {
        n,
        found: None,
        exhausted: true,
        nodes_visited: 0,
        symmetry_assumptions: symmetry_assumptions.clone(),
        reason: Some(reason),
    };
    let st = (s as usize).checked_pow(t as u32);
    match st {
        Some(st) if n % st == 0 => {}
        _ => return Ok(infeasible(format!("lambda = N / s^t = {n} / {s}^{t} is not an integer"))),
    }
    if simple_only && (s as u128).checked_pow(k as u32).is_some_and(|c| (n as u128) > c) {
        return Ok(infeasible(format!("N = {n} exceeds the {s}^{k} distinct rows")));
    }

    let p = Problem::new(n, k, s as usize, t, simple_only)?;
    let shared = Shared {
        opts,
        nodes: AtomicU64::new(1),
        best: AtomicUsize::new(usize::MAX),
    };

    // Root: the zero row.
    let mut root_counts = vec![0u32; p.num_counters];
    p.apply(&mut root_counts, 0, 1);
    let root_nodes = 1u64;
    let second_from = p.next_from(0);

    let result = if n == 1 {
        if p.completable(&root_counts, second_from) {
            Some((vec![0usize], root_nodes))
        } else {
            None
        }
        .map(Ok)
    } else if !p.completable(&root_counts, second_from) {
        None
    } else {
        let subtrees: Vec<usize> = (second_from..p.num_cand)
            .filter(|&r| p.fits(&root_counts, r))
            .collect();
        let run = |(idx, &r): (usize, &usize)| -> (Walk, Vec<usize>, u64) {
            if shared.best.load(Ordering::Relaxed) < idx {
                return (Walk::Aborted, Vec::new(), 0);
            }
            let mut w = Worker {
                p: &p,
                shared: &shared,
                subtree: idx,
                counts: root_counts.clone(),
                rows: vec![0],
                nodes: 1,
                pending: 1,
            };
            p.apply(&mut w.counts, r, 1);
            w.rows.push(r);
            let next = p.next_from(r);
            let walk = if p.completable(&w.counts, next) {
                w.dfs(next)
            } else {
                Walk::Exhausted
            };
            shared.nodes.fetch_add(w.pending, Ordering::Relaxed);
            if matches!(walk, Walk::Found) {
                shared.best.fetch_min(idx, Ordering::Relaxed);
            }
            (walk, w.rows, w.nodes)
        };
        let results: Vec<(Walk, Vec<usize>, u64)> = if opts.parallel {
            subtrees.par_iter().enumerate().map(run).collect()
        } else {
            let mut out = Vec::with_capacity(subtrees.len());
            for item in subtrees.iter().enumerate() {
                let r = run(item);
                let stop = matches!(r.0, Walk::Found | Walk::OverBudget);
                out.push(r);
                if stop {
                    break;
                }
            }
            out
        };

        let mut nodes = root_nodes;
        let mut found = None;
        for (walk, rows, sub_nodes) in results {
            nodes += sub_nodes;
            match walk {
                Walk::Found => {
                    found = Some((rows, nodes));
                    break;
                }
                Walk::Exhausted => {}
                Walk::OverBudget => return Err(Error::BudgetExceeded { budget: opts.budget }),
                Walk::Aborted => unreachable!("subtrees before the winner always finish"),
            }
        }
        match found {
            Some(x) => Some(Ok(x)),
            None if nodes > opts.budget => Some(Err(Error::BudgetExceeded { budget: opts.budget })),
            None => {
                return Ok(SearchOutcome {
                    n,
                    found: None,
                    exhausted: true,
                    nodes_visited: nodes,
                    symmetry_assumptions,
                    reason: None,
                })
            }
        }
    };

    match result {
        None => Ok(SearchOutcome {
            n,
            found: None,
            exhausted: true,
            nodes_visited: root_nodes,
            symmetry_assumptions,
            reason: None,
        }),
        Some(Err(e)) => Err(e),
        Some(Ok((rows, nodes))) => {
            let array = decode_rows(&rows, k, s)?;
            if !verify_strength(&array, t)?.holds {
                return Err(Error::Verification(format!("search result lacks strength {t}")));
            }
            if simple_only && !MultiplicityCensus::of(&array).is_simple {
                return Err(Error::Verification("search result has repeated rows".into()));
            }
            Ok(SearchOutcome {
                n,
                found: Some(array),
                exhausted: false,
                nodes_visited: nodes,
                symmetry_assumptions,
                reason: None,
            })
        }
    }
}

fn decode_rows(rows: &[usize], k: usize, s: u8) -> Result<SymbolArray> {
    let mut data = Vec::with_capacity(rows.len() * k);
    for &r in rows {
        let mut d = vec![0u8; k];
        let mut x = r;
        for j in (0..k).rev() {
            d[j] = (x % s as usize) as u8;
            x /= s as usize;
        }
        data.extend(d);
    }
    SymbolArray::from_flat(k, s, data)
}

/// Smallest `N <= n_limit` with an array, stepping over multiples of `s^t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinRows {
    /// `None` when every feasible `N <= n_limit` was exhausted.
    pub value: Option<usize>,
    pub array: Option<SymbolArray>,
    /// One exhaustion certificate per smaller feasible `N`.
    pub exhausted: Vec<SearchOutcome>,
}

pub fn min_rows(
    k: usize,
    s: u8,
    t: usize,
    simple_only: bool,
    n_limit: usize,
    opts: &SearchOptions,
) -> Result<MinRows> {
    let step = (s as usize)
        .checked_pow(t as u32)
        .ok_or_else(|| Error::param("s^t overflows"))?;
    let mut exhausted = Vec::new();
    let mut n = step;
    while n <= n_limit {
        let outcome = exists_oa(n, k, s, t, simple_only, opts)?;
        if let Some(a) = outcome.found {
            return Ok(MinRows {
                value: Some(n),
                array: Some(a),
                exhausted,
            });
        }
        exhausted.push(outcome);
        n += step;
    }
    Ok(MinRows {
        value: None,
        array: None,
        exhausted,
    })
}

/// Wire form of a [`SearchOutcome`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOutcomeJson {
    pub n: usize,
    pub found: Option<String>,
    pub exhausted: bool,
    pub nodes_visited: u64,
    pub symmetry_assumptions: Vec<String>,
    pub reason: Option<String>,
}

impl From<&SearchOutcome> for SearchOutcomeJson {
    fn from(o: &SearchOutcome) -> Self {
        SearchOutcomeJson {
            n: o.n,
            found: o.found.as_ref().and_then(|a| a.to_text().ok()),
            exhausted: o.exhausted,
            nodes_visited: o.nodes_visited,
            symmetry_assumptions: o.symmetry_assumptions.clone(),
            reason: o.reason.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::even_weight_oa;

    fn seq() -> SearchOptions {
        SearchOptions {
            parallel: false,
            ..Default::default()
        }
    }

    #[test]
    fn no_simple_oa_4_4_2_2() {
        let o = exists_oa(4, 4, 2, 2, true, &seq()).unwrap();
        assert!(o.exhausted && o.found.is_none());
        assert_eq!(o.symmetry_assumptions.len(), 2);
    }

    #[test]
    fn finds_simple_oa_8_4_2_2() {
        let o = exists_oa(8, 4, 2, 2, true, &seq()).unwrap();
        let a = o.found.unwrap();
        assert!(verify_strength(&a, 2).unwrap().holds);
        assert!(a.is_simple());
    }

    #[test]
    fn finds_the_even_weight_array() {
        let o = exists_oa(16, 5, 2, 4, true, &seq()).unwrap();
        assert_eq!(o.found.unwrap(), even_weight_oa(5).unwrap());
    }

    #[test]
    fn non_integral_lambda() {
        let o = exists_oa(6, 3, 2, 2, false, &seq()).unwrap();
        assert!(o.exhausted);
        assert!(o.reason.unwrap().contains("not an integer"));
    }

    #[test]
    fn repeated_rows_allowed_when_not_simple() {
        // two copies of {0, 1}: OA(4, 1, 2, 1)
        let o = exists_oa(4, 1, 2, 1, false, &seq()).unwrap();
        let a = o.found.unwrap();
        assert_eq!(a.as_flat(), &[0, 0, 1, 1]);
        let o = exists_oa(4, 1, 2, 1, true, &seq()).unwrap();
        assert!(o.exhausted);
    }

    #[test]
    fn parallel_matches_sequential() {
        let par = SearchOptions::default();
        for (n, k, t) in [(8, 4, 2), (16, 5, 3), (8, 5, 3), (16, 6, 3), (12, 4, 2)] {
            let a = exists_oa(n, k, 2, t, true, &seq()).unwrap();
            let b = exists_oa(n, k, 2, t, true, &par).unwrap();
            assert_eq!(a, b, "N = {n}, k = {k}, t = {t}");
        }
    }

    #[test]
    fn budget_overrun_is_an_error() {
        let tiny = SearchOptions {
            budget: 10,
            parallel: false,
            ..Default::default()
        };
        let err = exists_oa(16, 6, 2, 3, true, &tiny).unwrap_err();
        assert_eq!(err, Error::BudgetExceeded { budget: 10 });
    }

    #[test]
    fn ternary_search() {
        let o = exists_oa(9, 4, 3, 2, true, &seq()).unwrap();
        let a = o.found.unwrap();
        assert!(verify_strength(&a, 2).unwrap().holds);
        let o = exists_oa(9, 5, 3, 2, false, &seq()).unwrap();
        assert!(o.exhausted);
    }

    #[test]
    fn min_rows_small() {
        let m = min_rows(3, 2, 2, true, 16, &seq()).unwrap();
        assert_eq!(m.value, Some(4));
        assert!(m.exhausted.is_empty());
        let m = min_rows(4, 2, 2, true, 16, &seq()).unwrap();
        assert_eq!(m.value, Some(8));
        assert_eq!(m.exhausted.len(), 1);
        let m = min_rows(4, 2, 2, true, 4, &seq()).unwrap();
        assert_eq!(m.value, None);
    }
}
