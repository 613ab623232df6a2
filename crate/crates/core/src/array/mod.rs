//! Symbol arrays: the data model shared by every other module.
//!
//! A [`SymbolArray`] is an `N x k` list of rows over `{0, .., s-1}`. Rows may
//! repeat; semantically an array is a multiset of rows, but row order is kept
//! so that parsing and serializing round-trip exactly. Columns are indexed
//! from zero throughout the library.

mod census;
mod character;
mod strength;

use std::fmt::Write as _;

use crate::error::{Error, Result};

pub use census::{weight_enumerator, MultiplicityCensus};
pub use character::{build_character_matrix, for_each_tuple_of_weight, CharacterMatrix};
pub use strength::{
    character_sum_check, distance_distribution, max_strength, max_strength_via_distances,
    verify_strength, CharacterSumCheck, StrengthReport, StrengthWitness,
};

/// Largest alphabet the text format can carry (one decimal digit per symbol).
pub const MAX_TEXT_SYMBOLS: u8 = 10;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymbolArray {
    k: usize,
    s: u8,
    /// Row-major symbols, `N * k` entries.
    data: Vec<u8>,
}

impl SymbolArray {
    /// Builds an array from a row-major buffer of `N * k` symbols.
    pub fn from_flat(k: usize, s: u8, data: Vec<u8>) -> Result<Self> {
        if k == 0 {
            return Err(Error::param("an array needs at least one column"));
        }
        if s < 2 {
            return Err(Error::param(format!("alphabet size {s} is below 2")));
        }
        if data.is_empty() || data.len() % k != 0 {
            return Err(Error::DimensionMismatch(format!(
                "{} symbols do not form a nonempty set of rows of length {k}",
                data.len()
            )));
        }
        if let Some(pos) = data.iter().position(|&x| x >= s) {
            return Err(Error::param(format!(
                "symbol {} at row {}, column {} is not below s = {s}",
                data[pos],
                pos / k,
                pos % k
            )));
        }
        Ok(SymbolArray { k, s, data })
    }

    pub fn from_rows<R: AsRef<[u8]>>(k: usize, s: u8, rows: &[R]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * k);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != k {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has length {}, expected {k}",
                    row.len()
                )));
            }
            data.extend_from_slice(row);
        }
        Self::from_flat(k, s, data)
    }

    /// All `s^k` tuples in lexicographic order.
    pub fn full_factorial(k: usize, s: u8) -> Result<Self> {
        let n = (s as usize)
            .checked_pow(k as u32)
            .filter(|&n| n <= 1 << 26)
            .ok_or_else(|| Error::param(format!("full factorial {s}^{k} is too large")))?;
        let mut data = Vec::with_capacity(n * k);
        let mut row = vec![0u8; k];
        for _ in 0..n {
            data.extend_from_slice(&row);
            for j in (0..k).rev() {
                row[j] += 1;
                if row[j] < s {
                    break;
                }
                row[j] = 0;
            }
        }
        Self::from_flat(k, s, data)
    }

    pub fn num_rows(&self) -> usize {
        self.data.len() / self.k
    }

    pub fn num_cols(&self) -> usize {
        self.k
    }

    pub fn symbols(&self) -> u8 {
        self.s
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.data[i * self.k..(i + 1) * self.k]
    }

    pub fn rows(&self) -> std::slice::ChunksExact<'_, u8> {
        self.data.chunks_exact(self.k)
    }

    pub fn as_flat(&self) -> &[u8] {
        &self.data
    }

    /// Binary rows packed into integers, column 0 in the most significant
    /// position, so integer order equals lexicographic row order.
    ///
    /// Returns `None` unless `s = 2` and `k <= 64`.
    pub fn packed_rows(&self) -> Option<Vec<u64>> {
        if self.s != 2 || self.k > 64 {
            return None;
        }
        Some(self.rows().map(pack_row).collect())
    }

    /// Rebuilds a binary array from packed rows (see [`Self::packed_rows`]).
    pub fn from_packed(k: usize, rows: &[u64]) -> Result<Self> {
        if k == 0 || k > 64 {
            return Err(Error::param(format!("packed rows need 1 <= k <= 64, got {k}")));
        }
        let mut data = Vec::with_capacity(rows.len() * k);
        for &r in rows {
            data.extend((0..k).map(|j| ((r >> (k - 1 - j)) & 1) as u8));
        }
        Self::from_flat(k, 2, data)
    }

    /// Same rows, sorted lexicographically.
    pub fn sorted(&self) -> Self {
        let mut rows: Vec<&[u8]> = self.rows().collect();
        rows.sort_unstable();
        let data = rows.concat();
        SymbolArray { data, ..*self }
    }

    pub fn is_simple(&self) -> bool {
        let mut rows: Vec<&[u8]> = self.rows().collect();
        rows.sort_unstable();
        rows.windows(2).all(|w| w[0] != w[1])
    }

    /// Removes column `j`.
    pub fn delete_column(&self, j: usize) -> Result<Self> {
        if self.k < 2 {
            return Err(Error::param("cannot delete the only column"));
        }
        if j >= self.k {
            return Err(Error::DimensionMismatch(format!(
                "column {j} out of range for k = {}",
                self.k
            )));
        }
        let keep: Vec<usize> = (0..self.k).filter(|&c| c != j).collect();
        self.select_columns(&keep)
    }

    /// Projection onto the given columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Result<Self> {
        if cols.is_empty() {
            return Err(Error::param("column selection is empty"));
        }
        if let Some(&c) = cols.iter().find(|&&c| c >= self.k) {
            return Err(Error::DimensionMismatch(format!(
                "column {c} out of range for k = {}",
                self.k
            )));
        }
        let mut data = Vec::with_capacity(self.num_rows() * cols.len());
        for row in self.rows() {
            data.extend(cols.iter().map(|&c| row[c]));
        }
        Ok(SymbolArray {
            k: cols.len(),
            s: self.s,
            data,
        })
    }

    /// Keeps the first `k` columns.
    pub fn truncate_columns(&self, k: usize) -> Result<Self> {
        if k == 0 || k > self.k {
            return Err(Error::DimensionMismatch(format!(
                "cannot keep {k} of {} columns",
                self.k
            )));
        }
        self.select_columns(&(0..k).collect::<Vec<_>>())
    }

    /// Stacks the rows of `other` below the rows of `self`.
    pub fn juxtapose(&self, other: &SymbolArray) -> Result<Self> {
        if self.k != other.k || self.s != other.s {
            return Err(Error::DimensionMismatch(format!(
                "cannot stack ({} columns, s = {}) on ({} columns, s = {})",
                other.k, other.s, self.k, self.s
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(SymbolArray { data, ..*self })
    }

    /// Adds `v` to every row, coordinatewise modulo `s`.
    pub fn translate(&self, v: &[u8]) -> Result<Self> {
        if v.len() != self.k {
            return Err(Error::DimensionMismatch(format!(
                "translation vector has length {}, expected {}",
                v.len(),
                self.k
            )));
        }
        if v.iter().any(|&x| x >= self.s) {
            return Err(Error::param("translation vector has a symbol out of range"));
        }
        let s = self.s as u16;
        let data = self
            .data
            .iter()
            .enumerate()
            .map(|(idx, &x)| ((x as u16 + v[idx % self.k] as u16) % s) as u8)
            .collect();
        Ok(SymbolArray { data, ..*self })
    }

    /// Parses the OA text format.
    ///
    /// The first non-comment line is `N k s`; then `N` lines of `k`
    /// contiguous digits follow. Lines starting with `#` and blank lines are
    /// skipped. Errors carry 1-based line numbers.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (hline, header) = lines.next().ok_or_else(|| Error::parse(1, "missing header"))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(Error::parse(hline, "header must be \"N k s\""));
        }
        let num = |f: &str, name: &str| -> Result<usize> {
            f.parse::<usize>()
                .map_err(|_| Error::parse(hline, format!("{name} is not a decimal integer: {f:?}")))
        };
        let n = num(fields[0], "N")?;
        let k = num(fields[1], "k")?;
        let s = num(fields[2], "s")?;
        if n == 0 || k == 0 {
            return Err(Error::parse(hline, "N and k must be positive"));
        }
        if !(2..=MAX_TEXT_SYMBOLS as usize).contains(&s) {
            return Err(Error::parse(hline, format!("s = {s} is outside 2..=10")));
        }
        let s = s as u8;

        let mut data = Vec::with_capacity(n.saturating_mul(k).min(1 << 28));
        let mut rows = 0usize;
        let mut last_line = hline;
        for (lno, line) in lines {
            last_line = lno;
            if rows == n {
                return Err(Error::parse(lno, format!("more than N = {n} rows")));
            }
            if line.len() != k {
                return Err(Error::parse(
                    lno,
                    format!("row has {} symbols, expected k = {k}", line.chars().count()),
                ));
            }
            for ch in line.bytes() {
                let d = match ch {
                    b'0'..=b'9' => ch - b'0',
                    _ => {
                        return Err(Error::parse(lno, format!("{:?} is not a digit", ch as char)))
                    }
                };
                if d >= s {
                    return Err(Error::parse(lno, format!("symbol {d} is not below s = {s}")));
                }
                data.push(d);
            }
            rows += 1;
        }
        if rows != n {
            return Err(Error::parse(
                last_line,
                format!("header declares N = {n} rows but {rows} were given"),
            ));
        }
        Ok(SymbolArray { k, s, data })
    }

    /// Serializes to the text format, with a trailing newline.
    pub fn to_text(&self) -> Result<String> {
        if self.s > MAX_TEXT_SYMBOLS {
            return Err(Error::param(format!(
                "the text format carries at most {MAX_TEXT_SYMBOLS} symbols, array has {}",
                self.s
            )));
        }
        let mut out = String::with_capacity(self.data.len() + self.num_rows() + 16);
        writeln!(out, "{} {} {}", self.num_rows(), self.k, self.s).unwrap();
        for row in self.rows() {
            out.extend(row.iter().map(|&x| (b'0' + x) as char));
            out.push('\n');
        }
        Ok(out)
    }
}

pub(crate) fn pack_row(row: &[u8]) -> u64 {
    row.iter().fold(0u64, |acc, &x| (acc << 1) | x as u64)
}

/// Formats a row as contiguous digits (symbols above 9 print as letters).
pub fn row_to_string(row: &[u8]) -> String {
    row.iter()
        .map(|&x| std::char::from_digit(x as u32, 36).unwrap_or('?'))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn even_weight_5() -> SymbolArray {
        let rows: Vec<Vec<u8>> = (0u32..32)
            .filter(|x| x.count_ones() % 2 == 0)
            .map(|x| (0..5).map(|j| ((x >> (4 - j)) & 1) as u8).collect())
            .collect();
        SymbolArray::from_rows(5, 2, &rows).unwrap()
    }

    #[test]
    fn parses_smallest_array() {
        let a = SymbolArray::parse("2 1 2\n0\n1\n").unwrap();
        assert_eq!((a.num_rows(), a.num_cols(), a.symbols()), (2, 1, 2));
        assert_eq!(a.row(1), &[1]);
    }

    #[test]
    fn parses_even_weight_file_with_comments() {
        let e = even_weight_5();
        let mut text = String::from("# even-weight vectors of length 5\n");
        text.push_str(&e.to_text().unwrap());
        let parsed = SymbolArray::parse(&text).unwrap();
        assert_eq!(parsed, e);
        assert_eq!(parsed.num_rows(), 16);
    }

    #[test]
    fn rejects_symbol_out_of_range() {
        let err = SymbolArray::parse("4 3 2\n012\n").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 2,
                message: "symbol 2 is not below s = 2".into()
            }
        );
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let cases = [
            ("", 1),
            ("2 1\n0\n1\n", 1),
            ("x 1 2\n0\n1\n", 1),
            ("2 2 2\n00\n1\n", 3),
            ("2 1 2\n0\n", 2),
            ("1 1 2\n0\n# c\n1\n", 4),
            ("1 2 2\n0a\n", 2),
        ];
        for (text, line) in cases {
            match SymbolArray::parse(text) {
                Err(Error::Parse { line: got, .. }) => assert_eq!(got, line, "{text:?}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
    }

    #[test]
    fn serialization_preserves_row_order() {
        let a = SymbolArray::from_rows(2, 3, &[[2, 1], [0, 0], [2, 1]]).unwrap();
        let text = a.to_text().unwrap();
        assert_eq!(text, "3 2 3\n21\n00\n21\n");
        assert_eq!(SymbolArray::parse(&text).unwrap(), a);
    }

    #[test]
    fn full_factorial_is_lexicographic() {
        let a = SymbolArray::full_factorial(2, 3).unwrap();
        let rows: Vec<String> = a.rows().map(row_to_string).collect();
        assert_eq!(rows, ["00", "01", "02", "10", "11", "12", "20", "21", "22"]);
    }

    #[test]
    fn packing_round_trips_and_orders() {
        let e = even_weight_5();
        let packed = e.packed_rows().unwrap();
        assert!(packed.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(SymbolArray::from_packed(5, &packed).unwrap(), e);
    }

    #[test]
    fn transforms_check_dimensions() {
        let e = even_weight_5();
        assert!(e.delete_column(5).is_err());
        assert!(e.translate(&[1, 1]).is_err());
        let other = SymbolArray::full_factorial(4, 2).unwrap();
        assert!(e.juxtapose(&other).is_err());
        let single = SymbolArray::from_rows(1, 2, &[[0]]).unwrap();
        assert!(single.delete_column(0).is_err());
    }

    #[test]
    fn translate_by_ones_complements() {
        let a = SymbolArray::from_rows(3, 2, &[[0, 1, 1]]).unwrap();
        assert_eq!(a.translate(&[1, 1, 1]).unwrap().row(0), &[1, 0, 0]);
        let b = SymbolArray::from_rows(2, 3, &[[2, 1]]).unwrap();
        assert_eq!(b.translate(&[2, 2]).unwrap().row(0), &[1, 0]);
    }
}
