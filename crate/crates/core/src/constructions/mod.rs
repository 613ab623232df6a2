//! Explicit constructions of binary orthogonal arrays.
//!
//! Every construction re-verifies its output with the checks in
//! [`crate::array`] before returning it, and returns rows in lexicographic
//! order.

mod kerdock;
mod linear;

use crate::array::{
    max_strength, max_strength_via_distances, verify_strength, MultiplicityCensus, SymbolArray,
};
use crate::error::{Error, Result};

pub use kerdock::{kerdock, nordstrom_robinson, octacode};
pub use linear::{dual_code_oa, LinearCode};

pub(crate) fn require(cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Verification(what.to_string()))
    }
}

pub(crate) fn post_verify_simple(a: &SymbolArray) -> Result<()> {
    require(MultiplicityCensus::of(a).is_simple, "rows are distinct")
}

/// Whether `a` has strength at least `t`, by counting for moderate sizes and
/// through the distance distribution for wide binary arrays.
pub(crate) fn has_strength(a: &SymbolArray, t: usize) -> Result<bool> {
    if t == 0 {
        return Ok(true);
    }
    let subsets = crate::lp::binomial(a.num_cols(), t) as f64;
    let counting_cost = subsets * a.num_rows() as f64;
    let pair_cost = (a.num_rows() as f64).powi(2);
    if a.symbols() == 2 && a.num_cols() <= 64 && counting_cost > 4.0 * pair_cost {
        Ok(max_strength_via_distances(a)? >= t)
    } else {
        Ok(verify_strength(a, t)?.holds)
    }
}

fn post_verify_strength(a: &SymbolArray, t: usize) -> Result<()> {
    require(has_strength(a, t)?, &format!("output has strength {t}"))
}

/// Rows `x` in `{0,1}^h`, columns the nonzero `y` in `{0,1}^h` (ascending),
/// entry `x . y mod 2`: an `OA(2^h, 2^h - 1, 2, 2)` from the Sylvester
/// Hadamard matrix of order `2^h`. For `h = 1` the single column only
/// supports strength 1.
pub fn sylvester_oa(h: usize) -> Result<SymbolArray> {
    if !(1..=10).contains(&h) {
        return Err(Error::param(format!("sylvester order 2^{h} outside 2^1..=2^10")));
    }
    let k = (1usize << h) - 1;
    let mut data = Vec::with_capacity((1 << h) * k);
    for x in 0u32..1 << h {
        data.extend((1u32..1 << h).map(|y| ((x & y).count_ones() % 2) as u8));
    }
    let a = SymbolArray::from_flat(k, 2, data)?.sorted();
    post_verify_simple(&a)?;
    post_verify_strength(&a, 2.min(k))?;
    Ok(a)
}

/// The `2^(k-1)` even-weight vectors of length `k`, an `OA(2^(k-1), k, 2, k-1)`.
pub fn even_weight_oa(k: usize) -> Result<SymbolArray> {
    if !(2..=24).contains(&k) {
        return Err(Error::param(format!("even-weight length {k} outside 2..=24")));
    }
    let rows: Vec<u64> = (0u64..1 << k).filter(|x| x.count_ones() % 2 == 0).collect();
    let a = SymbolArray::from_packed(k, &rows)?;
    post_verify_strength(&a, k - 1)?;
    Ok(a)
}

/// The repetition code `{0^k, 1^k}`, a simple `OA(2, k, 2, 1)`.
pub fn repetition_oa(k: usize) -> Result<SymbolArray> {
    let a = SymbolArray::from_rows(k, 2, &[vec![0u8; k], vec![1u8; k]])?;
    post_verify_strength(&a, 1)?;
    Ok(a)
}

/// `[0 | A ; 1 | complement(A)]`: from a simple binary array of even strength
/// `2u`, a simple array of strength `2u + 1` with twice the rows and one more
/// column. An input of odd strength is used at the even strength below it.
pub fn double_strength(a: &SymbolArray) -> Result<SymbolArray> {
    if a.symbols() != 2 {
        return Err(Error::param("doubling needs a binary array"));
    }
    if !MultiplicityCensus::of(a).is_simple {
        return Err(Error::NotSimple {
            row: "(input)".into(),
        });
    }
    let t = max_strength(a);
    let even = t - t % 2;
    let k = a.num_cols();
    let mut data = Vec::with_capacity(2 * a.num_rows() * (k + 1));
    for row in a.rows() {
        data.push(0);
        data.extend_from_slice(row);
    }
    for row in a.rows() {
        data.push(1);
        data.extend(row.iter().map(|&x| 1 - x));
    }
    let out = SymbolArray::from_flat(k + 1, 2, data)?.sorted();
    post_verify_simple(&out)?;
    post_verify_strength(&out, even + 1)?;
    Ok(out)
}

/// Largest `t` for which `a` has strength `t`, choosing the cheaper verifier per level.
pub fn strength_of(a: &SymbolArray) -> Result<usize> {
    let mut t = 0;
    while t < a.num_cols() && has_strength(a, t + 1)? {
        t += 1;
    }
    Ok(t)
}

/// Rows with `symbol` in column `col`, with that column removed. The
/// column must be balanced; strength drops by at most one.
pub fn zero_shorten_at(a: &SymbolArray, col: usize, symbol: u8) -> Result<SymbolArray> {
    let k = a.num_cols();
    if k < 2 {
        return Err(Error::param("shortening needs at least two columns"));
    }
    if col >= k || symbol >= a.symbols() {
        return Err(Error::DimensionMismatch(format!(
            "column {col} / symbol {symbol} out of range"
        )));
    }
    let s = a.symbols() as usize;
    let mut counts = vec![0usize; s];
    for row in a.rows() {
        counts[row[col] as usize] += 1;
    }
    if counts.iter().any(|&c| c != counts[0]) {
        return Err(Error::param(format!("column {col} is not balanced: counts {counts:?}")));
    }
    let t = strength_of(a)?;
    let rows: Vec<Vec<u8>> = a
        .rows()
        .filter(|r| r[col] == symbol)
        .map(|r| r.iter().enumerate().filter(|&(j, _)| j != col).map(|(_, &x)| x).collect())
        .collect();
    let out = SymbolArray::from_rows(k - 1, a.symbols(), &rows)?.sorted();
    post_verify_strength(&out, t.saturating_sub(1))?;
    Ok(out)
}

/// [`zero_shorten_at`] on the first column and symbol 0.
pub fn zero_shorten(a: &SymbolArray) -> Result<SymbolArray> {
    zero_shorten_at(a, 0, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::array::row_to_string;

    fn rows(a: &SymbolArray) -> Vec<String> {
        a.rows().map(row_to_string).collect()
    }

    #[test]
    fn sylvester_small_orders() {
        let a = sylvester_oa(2).unwrap();
        assert_eq!(rows(&a), ["000", "011", "101", "110"]);
        let b = sylvester_oa(3).unwrap();
        assert_eq!((b.num_rows(), b.num_cols()), (8, 7));
        assert_eq!(max_strength(&b), 2);
        let c = sylvester_oa(1).unwrap();
        assert_eq!(rows(&c), ["0", "1"]);
        assert_eq!(max_strength(&c), 1);
        assert!(sylvester_oa(0).is_err());
    }

    #[test]
    fn even_weight_small() {
        assert_eq!(rows(&even_weight_oa(3).unwrap()), ["000", "011", "101", "110"]);
        assert_eq!(even_weight_oa(3).unwrap(), sylvester_oa(2).unwrap());
        let two = even_weight_oa(2).unwrap();
        assert_eq!(rows(&two), ["00", "11"]);
        assert_eq!(max_strength(&two), 1);
        assert!(even_weight_oa(1).is_err());
    }

    #[test]
    fn doubling_full_factorial() {
        let ff = SymbolArray::full_factorial(2, 2).unwrap();
        let d = double_strength(&ff).unwrap();
        assert_eq!(d, SymbolArray::full_factorial(3, 2).unwrap());
    }

    #[test]
    fn doubling_even_weight_and_sylvester() {
        let d = double_strength(&even_weight_oa(5).unwrap()).unwrap();
        assert_eq!((d.num_rows(), d.num_cols()), (32, 6));
        assert_eq!(max_strength(&d), 5);
        let d = double_strength(&sylvester_oa(3).unwrap()).unwrap();
        assert_eq!((d.num_rows(), d.num_cols()), (16, 8));
        assert_eq!(max_strength(&d), 3);
    }

    #[test]
    fn doubling_rejects_repeated_rows() {
        let e = even_weight_oa(3).unwrap();
        let twice = e.juxtapose(&e).unwrap();
        assert!(matches!(double_strength(&twice), Err(Error::NotSimple { .. })));
    }

    #[test]
    fn shortening() {
        let ff = SymbolArray::full_factorial(2, 2).unwrap();
        assert_eq!(zero_shorten(&ff).unwrap(), SymbolArray::full_factorial(1, 2).unwrap());
        let s = zero_shorten(&even_weight_oa(5).unwrap()).unwrap();
        assert_eq!(s, even_weight_oa(4).unwrap());
        assert_eq!(max_strength(&s), 3);
        let unbalanced = SymbolArray::from_rows(2, 2, &[[0, 0], [0, 1], [1, 1]]).unwrap();
        assert!(zero_shorten(&unbalanced).is_err());
        let on_last = zero_shorten_at(&even_weight_oa(4).unwrap(), 3, 1).unwrap();
        assert_eq!(rows(&on_last), ["001", "010", "100", "111"]);
    }

    #[test]
    fn shorten_then_double_restores_strength() {
        for k in 3..=8 {
            let e = even_weight_oa(k).unwrap();
            let t = max_strength(&e);
            let up = double_strength(&e).unwrap();
            let down = zero_shorten(&up).unwrap();
            assert!(max_strength(&down) >= t - t % 2, "k = {k}");
        }
    }
}
