//! Boolean functions and their correspondence with simple binary arrays.
//!
//! The Fourier transform here is the 0/1 form `f^(a) = sum_x f(x) (-1)^(a.x)`;
//! the support of `f` is a simple orthogonal array of strength `t` exactly
//! when `f^` vanishes on every nonzero `a` of weight at most `t`.

use std::fmt::Write as _;

use crate::array::SymbolArray;
use crate::error::{Error, Result};

/// Largest variable count for which the full transform is computed.
pub const MAX_TRANSFORM_VARS: usize = 24;

/// Truth table of `f: {0,1}^k -> {0,1}`, indexed by `x` in lexicographic
/// order (`x_1` is the most significant bit of the index).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BooleanFunction {
    k: usize,
    table: Vec<bool>,
}

impl BooleanFunction {
    pub fn from_table(k: usize, table: Vec<bool>) -> Result<Self> {
        if k > 30 {
            return Err(Error::param(format!("{k} variables is too many for a truth table")));
        }
        if table.len() != 1 << k {
            return Err(Error::DimensionMismatch(format!(
                "truth table has length {}, expected 2^{k}",
                table.len()
            )));
        }
        Ok(BooleanFunction { k, table })
    }

    pub fn zero(k: usize) -> Result<Self> {
        Self::from_table(k, vec![false; 1usize.checked_shl(k as u32).unwrap_or(0)])
    }

    pub fn from_fn(k: usize, f: impl Fn(u64) -> bool) -> Result<Self> {
        if k > 30 {
            return Err(Error::param(format!("{k} variables is too many for a truth table")));
        }
        Self::from_table(k, (0..1u64 << k).map(f).collect())
    }

    pub fn num_vars(&self) -> usize {
        self.k
    }

    pub fn table(&self) -> &[bool] {
        &self.table
    }

    pub fn eval(&self, x: u64) -> bool {
        self.table[x as usize]
    }

    pub fn weight(&self) -> usize {
        self.table.iter().filter(|&&b| b).count()
    }

    /// `f^(a) = sum_x f(x) (-1)^(a.x)`.
    pub fn fourier_coefficient(&self, a: &[u8]) -> Result<i64> {
        if a.len() != self.k {
            return Err(Error::DimensionMismatch(format!(
                "point has length {}, expected {}",
                a.len(),
                self.k
            )));
        }
        let mask = index_of(a);
        Ok(self
            .table
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(x, _)| if (x as u64 & mask).count_ones() % 2 == 0 { 1 } else { -1 })
            .sum())
    }

    /// All `2^k` coefficients by the in-place butterfly; entry `a` uses the
    /// same indexing as the truth table.
    pub fn fourier_transform(&self) -> Result<Vec<i64>> {
        if self.k > MAX_TRANSFORM_VARS {
            return Err(Error::param(format!(
                "transform supports at most {MAX_TRANSFORM_VARS} variables"
            )));
        }
        let mut v: Vec<i64> = self.table.iter().map(|&b| b as i64).collect();
        let mut h = 1;
        while h < v.len() {
            for block in v.chunks_exact_mut(2 * h) {
                let (lo, hi) = block.split_at_mut(h);
                for (x, y) in lo.iter_mut().zip(hi.iter_mut()) {
                    let (p, q) = (*x, *y);
                    *x = p + q;
                    *y = p - q;
                }
            }
            h *= 2;
        }
        Ok(v)
    }

    /// Correlation-immunity order: the largest `t` with `f^(a) = 0` for all
    /// `1 <= wt(a) <= t`. The constant-zero function has no defined order.
    pub fn ci_order(&self) -> Result<usize> {
        if self.weight() == 0 {
            return Err(Error::param("correlation-immunity order of the zero function is undefined"));
        }
        let coeffs = self.fourier_transform()?;
        let lowest = coeffs
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, &c)| c != 0)
            .map(|(a, _)| a.count_ones() as usize)
            .min();
        Ok(lowest.map_or(self.k, |w| w - 1))
    }

    /// The support written as rows of an array, lexicographically.
    pub fn support_to_oa(&self) -> Result<SymbolArray> {
        if self.weight() == 0 {
            return Err(Error::param("the zero function has an empty support"));
        }
        if self.k == 0 {
            return Err(Error::param("a function of zero variables has no array"));
        }
        let rows: Vec<u64> = (0..self.table.len() as u64).filter(|&x| self.eval(x)).collect();
        SymbolArray::from_packed(self.k, &rows)
    }

    /// Indicator of the rows of a simple binary array.
    pub fn oa_to_support(a: &SymbolArray) -> Result<Self> {
        if a.symbols() != 2 {
            return Err(Error::param(format!("support needs s = 2, array has s = {}", a.symbols())));
        }
        let k = a.num_cols();
        let mut f = Self::zero(k)?;
        for row in a.rows() {
            let x = index_of(row) as usize;
            if f.table[x] {
                return Err(Error::NotSimple {
                    row: crate::array::row_to_string(row),
                });
            }
            f.table[x] = true;
        }
        Ok(f)
    }

    /// Truth-table file: a line `k`, then the `2^k` table characters.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or_else(|| Error::parse(1, "missing header"))?;
        let k: usize = header
            .parse()
            .map_err(|_| Error::parse(hline, format!("k is not a decimal integer: {header:?}")))?;
        if k > 30 {
            return Err(Error::parse(hline, format!("k = {k} is too large")));
        }
        let (tline, body) = lines
            .next()
            .ok_or_else(|| Error::parse(hline + 1, "missing truth table"))?;
        if body.len() != 1 << k {
            return Err(Error::parse(
                tline,
                format!("truth table has {} characters, expected {}", body.len(), 1u64 << k),
            ));
        }
        let table = body
            .bytes()
            .map(|b| match b {
                b'0' => Ok(false),
                b'1' => Ok(true),
                _ => Err(Error::parse(tline, format!("{:?} is not 0 or 1", b as char))),
            })
            .collect::<Result<Vec<_>>>()?;
        if let Some((extra, _)) = lines.next() {
            return Err(Error::parse(extra, "unexpected content after the truth table"));
        }
        Self::from_table(k, table)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.table.len() + 8);
        writeln!(out, "{}", self.k).unwrap();
        out.extend(self.table.iter().map(|&b| if b { '1' } else { '0' }));
        out.push('\n');
        out
    }
}

/// Index of a bit tuple with the first coordinate most significant.
fn index_of(bits: &[u8]) -> u64 {
    bits.iter().fold(0u64, |acc, &b| (acc << 1) | (b & 1) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn even_indicator(k: usize) -> BooleanFunction {
        BooleanFunction::from_fn(k, |x| x.count_ones() % 2 == 0).unwrap()
    }

    #[test]
    fn zero_function_coefficients_vanish() {
        let f = BooleanFunction::zero(3).unwrap();
        assert_eq!(f.fourier_coefficient(&[1, 0, 1]).unwrap(), 0);
        assert!(f.ci_order().is_err());
        assert!(f.support_to_oa().is_err());
    }

    #[test]
    fn coefficient_at_zero_is_weight() {
        let f = BooleanFunction::from_fn(4, |x| x % 3 == 1).unwrap();
        assert_eq!(f.fourier_coefficient(&[0; 4]).unwrap(), f.weight() as i64);
        assert!(f.fourier_coefficient(&[0; 3]).is_err());
    }

    #[test]
    fn even_indicator_coefficients() {
        let f = even_indicator(5);
        assert_eq!(f.fourier_coefficient(&[1, 0, 0, 0, 0]).unwrap(), 0);
        assert_eq!(f.fourier_coefficient(&[1, 1, 1, 1, 1]).unwrap(), 16);
        assert_eq!(f.ci_order().unwrap(), 4);
    }

    #[test]
    fn dictator_has_order_zero() {
        // f(x) = x_1
        let f = BooleanFunction::from_fn(4, |x| x >> 3 == 1).unwrap();
        assert_ne!(f.fourier_coefficient(&[1, 0, 0, 0]).unwrap(), 0);
        assert_eq!(f.ci_order().unwrap(), 0);
    }

    #[test]
    fn constant_one_has_full_order() {
        let f = BooleanFunction::from_fn(2, |_| true).unwrap();
        assert_eq!(f.ci_order().unwrap(), 2);
        let a = f.support_to_oa().unwrap();
        assert_eq!(a, SymbolArray::full_factorial(2, 2).unwrap());
    }

    #[test]
    fn butterfly_matches_direct_sum() {
        let f = BooleanFunction::from_fn(6, |x| (x * 37 + 11) % 7 < 3).unwrap();
        let all = f.fourier_transform().unwrap();
        for (a, &c) in all.iter().enumerate() {
            let bits: Vec<u8> = (0..6).map(|j| ((a >> (5 - j)) & 1) as u8).collect();
            assert_eq!(f.fourier_coefficient(&bits).unwrap(), c);
        }
    }

    #[test]
    fn repeated_rows_are_rejected() {
        let a = SymbolArray::from_rows(2, 2, &[[0, 1], [0, 1]]).unwrap();
        assert!(matches!(BooleanFunction::oa_to_support(&a), Err(Error::NotSimple { .. })));
        let t = SymbolArray::from_rows(2, 3, &[[0, 1]]).unwrap();
        assert!(BooleanFunction::oa_to_support(&t).is_err());
    }

    #[test]
    fn truth_table_file() {
        let f = even_indicator(3);
        let text = f.to_text();
        assert_eq!(text, "3\n10010110\n");
        assert_eq!(BooleanFunction::parse(&text).unwrap(), f);
        assert!(matches!(
            BooleanFunction::parse("3\n1001011\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            BooleanFunction::parse("2\n1021\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }
}
