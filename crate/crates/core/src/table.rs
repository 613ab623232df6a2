//! Certified intervals for the minimum size of simple binary arrays.
//!
//! Each cell `(k, t)` holds a lower bound (Rao, Friedman-Bierbrauer,
//! Khalyavin and optionally the LP bound, rounded up to a multiple of `2^t`,
//! possibly raised by exhaustive search) and an upper bound (the smallest
//! verified simple construction, or a search result). A cell is resolved
//! when the two meet.
//!
//! Upper bounds from truncated constructions rely on column deletion
//! preserving strength; the untruncated source is verified once and every
//! truncation is checked for distinct rows.

use std::collections::BTreeMap;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::array::{MultiplicityCensus, SymbolArray};
use crate::bounds::{bound_report, BoundOptions};
use crate::constructions::{
    double_strength, dual_code_oa, even_weight_oa, nordstrom_robinson, repetition_oa,
    strength_of, sylvester_oa, zero_shorten, LinearCode,
};
use crate::error::{Error, Result};
use crate::report::{Provenance, Source};
use crate::search::{exists_oa, SearchOptions};

/// Widest table the command builds.
pub const MAX_TABLE_K: usize = 16;

#[derive(Debug, Clone)]
pub struct TableOptions {
    pub lp: bool,
    /// Exhaustive search on cells with at most this many columns (0 = off).
    pub search_max_k: usize,
    pub search: SearchOptions,
}

impl Default for TableOptions {
    fn default() -> Self {
        TableOptions {
            lp: true,
            search_max_k: 0,
            search: SearchOptions::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableCell {
    pub k: usize,
    pub t: usize,
    pub lower: u128,
    pub upper: Option<u128>,
    pub resolved: bool,
    pub provenance: Vec<Provenance>,
}

impl TableCell {
    /// The certified value, when resolved.
    pub fn value(&self) -> Option<u128> {
        self.resolved.then_some(self.lower)
    }
}

/// A verified simple array and the strength it is certified to have.
struct Witness {
    name: String,
    rows: usize,
    strength: usize,
}

/// Verified base arrays that get truncated to fewer columns.
struct Bases {
    sylvester: BTreeMap<usize, SymbolArray>,
    nr: Option<SymbolArray>,
    nr_short: Option<SymbolArray>,
    dual13: Option<SymbolArray>,
}

impl Bases {
    fn new(max_k: usize) -> Result<Self> {
        let mut sylvester = BTreeMap::new();
        let mut h = 1;
        while (1 << (h - 1)) <= max_k {
            sylvester.insert(h, sylvester_oa(h)?);
            h += 1;
        }
        let nr = (max_k >= 4).then(nordstrom_robinson).transpose()?;
        let nr_short = nr.as_ref().map(zero_shorten).transpose()?;
        let dual13 = (max_k >= 6)
            .then(|| dual_code_oa(&LinearCode::code_13_3_7()))
            .transpose()?;
        Ok(Bases {
            sylvester,
            nr,
            nr_short,
            dual13,
        })
    }

    fn sylvester_for(&self, k: usize) -> Option<(usize, &SymbolArray)> {
        self.sylvester
            .iter()
            .find(|(&h, _)| (1 << h) > k)
            .map(|(&h, a)| (h, a))
    }
}

fn truncated(a: &SymbolArray, k: usize) -> Option<SymbolArray> {
    if k > a.num_cols() {
        return None;
    }
    let t = a.truncate_columns(k).ok()?;
    MultiplicityCensus::of(&t).is_simple.then_some(t)
}

fn witnesses_for(k: usize, bases: &Bases) -> Result<Vec<Witness>> {
    let mut out = Vec::new();
    let mut push = |name: String, a: &SymbolArray, strength: usize| {
        out.push(Witness {
            name,
            rows: a.num_rows(),
            strength: strength.min(k),
        })
    };

    let ff = SymbolArray::full_factorial(k, 2)?;
    push(format!("full factorial 2^{k}"), &ff, k);
    push("repetition code".into(), &repetition_oa(k)?, 1);
    if k >= 2 {
        let e = even_weight_oa(k)?;
        push("even-weight code".into(), &e, k - 1);
    }
    if let Some((h, syl)) = bases.sylvester_for(k) {
        if let Some(a) = truncated(syl, k) {
            push(format!("Sylvester 2^{h}, first {k} columns"), &a, strength_of(syl)?);
        }
    }
    if k >= 2 {
        if let Some((h, syl)) = bases.sylvester_for(k - 1) {
            if let Some(a) = truncated(syl, k - 1) {
                let d = double_strength(&a)?;
                let st = strength_of(&d)?;
                push(format!("doubled Sylvester 2^{h}, {} columns", k - 1), &d, st);
            }
        }
    }
    if let Some(a) = bases.nr_short.as_ref().and_then(|b| truncated(b, k)) {
        push(format!("shortened Nordstrom-Robinson, first {k} columns"), &a, 4);
    }
    if let Some(a) = bases.nr.as_ref().and_then(|b| truncated(b, k)) {
        push(format!("Nordstrom-Robinson, first {k} columns"), &a, 5);
    }
    if let Some(dual) = &bases.dual13 {
        if let Some(a) = truncated(dual, k) {
            push(format!("dual of the [13,3,7] code, first {k} columns"), &a, 6);
        }
        if k >= 2 {
            if let Some(a) = truncated(dual, k - 1) {
                let d = double_strength(&a)?;
                push(format!("doubled dual of the [13,3,7] code, {} columns", k - 1), &d, 7);
            }
        }
    }
    linear_witnesses(k, &mut out)?;
    Ok(out)
}

/// Largest dimension tried for the linear-code witnesses.
const MAX_LINEAR_DIM: usize = 4;
/// Linear-code witnesses are built only up to `2^MAX_LINEAR_ROWS_LOG2` rows.
const MAX_LINEAR_ROWS_LOG2: usize = 12;

/// Minimum weight of the code whose generator columns are `cols` (`r`-bit).
fn min_weight(r: usize, cols: &[u32]) -> usize {
    (1u32..1 << r)
        .map(|m| cols.iter().filter(|&&c| (m & c).count_ones() % 2 == 1).count())
        .min()
        .unwrap_or(0)
}

/// For each dimension `r`, a `[k, r]` code with columns spread as evenly as
/// possible over the nonzero vectors of `GF(2)^r`, the leftover columns
/// chosen to maximise the minimum distance. Its dual is a simple
/// `OA(2^(k-r), k, 2, d-1)`.
fn linear_witnesses(k: usize, out: &mut Vec<Witness>) -> Result<()> {
    // r = 1 is the even-weight code, already a witness
    for r in 2..=MAX_LINEAR_DIM.min(k - 1) {
        if k - r > MAX_LINEAR_ROWS_LOG2 {
            continue;
        }
        let types: Vec<u32> = (1u32..1 << r).collect();
        let base = k / types.len();
        let rem = k % types.len();
        let mut best: Option<(usize, Vec<u32>)> = None;
        for extra in types.iter().copied().combinations(rem) {
            let mut cols: Vec<u32> = types.iter().flat_map(|&c| std::iter::repeat_n(c, base)).collect();
            cols.extend(extra);
            let d = min_weight(r, &cols);
            if best.as_ref().is_none_or(|(bd, _)| d > *bd) {
                best = Some((d, cols));
            }
        }
        let Some((d, cols)) = best else { continue };
        if d < 2 {
            continue;
        }
        let generator: Vec<Vec<u8>> = (0..r)
            .map(|i| cols.iter().map(|&c| (c >> i & 1) as u8).collect())
            .collect();
        let Ok(code) = LinearCode::new(k, &generator) else { continue };
        let a = dual_code_oa(&code)?;
        out.push(Witness {
            name: format!("dual of a [{k},{r},{d}] code"),
            rows: a.num_rows(),
            strength: d - 1,
        });
    }
    Ok(())
}

/// Intervals for every `1 <= t <= min(k, max_t)`, `1 <= k <= max_k`.
pub fn min_rows_table(max_k: usize, max_t: usize, opts: &TableOptions) -> Result<Vec<TableCell>> {
    if max_k == 0 || max_k > MAX_TABLE_K || max_t == 0 {
        return Err(Error::param(format!(
            "table needs 1 <= max_k <= {MAX_TABLE_K} and max_t >= 1"
        )));
    }
    let bases = Bases::new(max_k)?;
    let mut cells = Vec::new();
    for k in 1..=max_k {
        let witnesses = witnesses_for(k, &bases)?;
        for t in 1..=k.min(max_t) {
            cells.push(cell(k, t, &witnesses, opts)?);
        }
    }
    Ok(cells)
}

fn cell(k: usize, t: usize, witnesses: &[Witness], opts: &TableOptions) -> Result<TableCell> {
    let mut provenance = Vec::new();
    let bounds = bound_report(
        k,
        2,
        t,
        BoundOptions {
            lp: opts.lp,
            integrality: true,
        },
    )?;
    let mut lower = bounds.best_lower;
    let mut parts = Vec::new();
    if let Some(m) = bounds.rao {
        parts.push(format!("Rao {m}"));
    }
    if let Some(v) = bounds.khalyavin_value {
        parts.push(format!("Khalyavin {v}"));
    }
    let fb = &bounds.friedman_bierbrauer;
    if fb > &crate::lp::Rational::from_integer(0.into()) {
        parts.push(format!("Friedman-Bierbrauer {fb}"));
    }
    provenance.push(Provenance::new(
        format!(
            "F*({k},2,{t}) >= {lower}: max of {}, rounded up to a multiple of 2^{t}",
            parts.join(", ")
        ),
        Source::Bound,
    ));
    if let Some(lp) = &bounds.lp {
        provenance.push(Provenance::new(
            format!("Delsarte LP optimum {} for k = {k}, t = {t}", lp.optimum),
            Source::Lp,
        ));
    }

    let best = witnesses
        .iter()
        .filter(|w| w.strength >= t)
        .min_by_key(|w| w.rows);
    let mut upper = best.map(|w| w.rows as u128);
    if let Some(w) = best {
        provenance.push(Provenance::new(
            format!("F*({k},2,{t}) <= {}: {}", w.rows, w.name),
            Source::Construction,
        ));
    }

    if k <= opts.search_max_k {
        let step = 1u128 << t;
        let mut n = lower;
        while upper.is_some_and(|u| n < u) {
            match exists_oa(n as usize, k, 2, t, true, &opts.search) {
                Ok(o) if o.found.is_some() => {
                    upper = Some(n);
                    provenance.push(Provenance::new(
                        format!("F*({k},2,{t}) <= {n}: exhaustive search found an array"),
                        Source::Search,
                    ));
                    break;
                }
                Ok(o) => {
                    provenance.push(Provenance::new(
                        format!(
                            "no simple OA({n},{k},2,{t}): search exhausted after {} nodes",
                            o.nodes_visited
                        ),
                        Source::Search,
                    ));
                    n += step;
                    lower = n;
                }
                Err(Error::BudgetExceeded { .. }) => break,
                Err(e) => return Err(e),
            }
        }
    }

    Ok(TableCell {
        k,
        t,
        lower,
        resolved: upper == Some(lower),
        upper,
        provenance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_table_is_resolved() {
        let opts = TableOptions {
            lp: false,
            ..Default::default()
        };
        let cells = min_rows_table(5, 4, &opts).unwrap();
        let expected = [
            (1, 1, 2),
            (2, 1, 2),
            (2, 2, 4),
            (3, 1, 2),
            (3, 2, 4),
            (3, 3, 8),
            (4, 1, 2),
            (4, 2, 8),
            (4, 3, 8),
            (4, 4, 16),
            (5, 1, 2),
            (5, 2, 8),
            (5, 3, 16),
            (5, 4, 16),
        ];
        assert_eq!(cells.len(), expected.len());
        for (c, (k, t, v)) in cells.iter().zip(expected) {
            assert_eq!((c.k, c.t), (k, t));
            assert_eq!(c.value(), Some(v), "cell ({k}, {t}): {c:?}");
        }
    }

    #[test]
    fn unresolved_cells_stay_unresolved() {
        let cells = min_rows_table(9, 4, &TableOptions::default()).unwrap();
        let c = cells.iter().find(|c| c.k == 9 && c.t == 4).unwrap();
        assert_eq!((c.lower, c.upper), (96, Some(128)));
        assert!(!c.resolved && c.value().is_none());
        // needs a Hadamard matrix of order 12
        let c = cells.iter().find(|c| c.k == 8 && c.t == 2).unwrap();
        assert!(!c.resolved);
        assert!(c.lower <= 12 && c.upper.unwrap() >= 12);
        let c = cells.iter().find(|c| c.k == 8 && c.t == 4).unwrap();
        assert_eq!(c.value(), Some(64));
    }
}
