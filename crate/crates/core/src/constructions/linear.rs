//! Binary linear codes and the arrays formed by their duals.

use std::fmt::Write as _;

use super::{post_verify_simple, require};
use crate::array::{max_strength, SymbolArray};
use crate::error::{Error, Result};

/// A binary linear `[n, dim]` code given by a full-rank generator matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCode {
    n: usize,
    /// Generator rows packed with coordinate 0 most significant.
    rows: Vec<u64>,
}

/// Largest dual dimension that is enumerated.
const MAX_DUAL_DIM: usize = 24;

impl LinearCode {
    pub fn new<R: AsRef<[u8]>>(n: usize, generator: &[R]) -> Result<Self> {
        if n == 0 || n > 64 {
            return Err(Error::param(format!("code length {n} outside 1..=64")));
        }
        let mut rows = Vec::with_capacity(generator.len());
        for (i, g) in generator.iter().enumerate() {
            let g = g.as_ref();
            if g.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "generator row {i} has length {}, expected {n}",
                    g.len()
                )));
            }
            if g.iter().any(|&b| b > 1) {
                return Err(Error::param(format!("generator row {i} is not binary")));
            }
            rows.push(crate::array::pack_row(g));
        }
        if rank(n, &rows) != rows.len() {
            return Err(Error::param("generator rows are linearly dependent"));
        }
        Ok(LinearCode { n, rows })
    }

    /// The `[n, 1, n]` repetition code.
    pub fn repetition(n: usize) -> Result<Self> {
        Self::new(n, &[vec![1u8; n]])
    }

    /// The `[13, 3, 7]` code whose dual is an `OA(1024, 13, 2, 6)`.
    pub fn code_13_3_7() -> Self {
        const G: [[u8; 13]; 3] = [
            [1, 1, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0],
            [1, 1, 1, 1, 0, 0, 0, 0, 1, 1, 1, 1, 0],
            [1, 1, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0, 1],
        ];
        Self::new(13, &G).expect("fixed generator has full rank")
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn generator(&self) -> Vec<Vec<u8>> {
        self.rows.iter().map(|&r| unpack(r, self.n)).collect()
    }

    /// Minimum weight of a nonzero codeword (`n + 1` for the zero code).
    pub fn min_distance(&self) -> Result<usize> {
        if self.dim() > MAX_DUAL_DIM {
            return Err(Error::param("code too large to enumerate"));
        }
        let words = gray_span(&self.rows);
        Ok(words
            .iter()
            .skip(1)
            .map(|w| w.count_ones() as usize)
            .min()
            .unwrap_or(self.n + 1))
    }

    /// A basis of the dual code, from the reduced row echelon form.
    pub fn dual_basis(&self) -> Vec<u64> {
        let n = self.n;
        let bit = |c: usize| 1u64 << (n - 1 - c);
        let mut m = self.rows.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..n {
            let Some(p) = (r..m.len()).find(|&i| m[i] & bit(c) != 0) else {
                continue;
            };
            m.swap(r, p);
            for i in 0..m.len() {
                if i != r && m[i] & bit(c) != 0 {
                    m[i] ^= m[r];
                }
            }
            pivots.push(c);
            r += 1;
        }
        (0..n)
            .filter(|c| !pivots.contains(c))
            .map(|f| {
                let mut v = bit(f);
                for (row, &p) in m.iter().zip(&pivots) {
                    if row & bit(f) != 0 {
                        v |= bit(p);
                    }
                }
                v
            })
            .collect()
    }

    /// Generator-matrix file: `dim n` header, then `dim` rows of `n` digits.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing header"))?;
        let fields: Vec<usize> = header
            .split_whitespace()
            .map(|f| f.parse().map_err(|_| Error::parse(hline, "header must be \"dim n\"")))
            .collect::<Result<_>>()?;
        let [dim, n] = fields[..] else {
            return Err(Error::parse(hline, "header must be \"dim n\""));
        };
        let mut rows = Vec::with_capacity(dim);
        let mut last = hline;
        for (lno, line) in lines {
            last = lno;
            if rows.len() == dim {
                return Err(Error::parse(lno, format!("more than dim = {dim} rows")));
            }
            if line.len() != n {
                return Err(Error::parse(lno, format!("row must have n = {n} digits")));
            }
            let row = line
                .bytes()
                .map(|b| match b {
                    b'0' | b'1' => Ok(b - b'0'),
                    _ => Err(Error::parse(lno, format!("{:?} is not a binary digit", b as char))),
                })
                .collect::<Result<Vec<u8>>>()?;
            rows.push(row);
        }
        if rows.len() != dim {
            return Err(Error::parse(last, format!("expected {dim} rows, got {}", rows.len())));
        }
        Self::new(n, &rows).map_err(|e| Error::parse(hline, e))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{} {}", self.dim(), self.n).unwrap();
        for row in self.generator() {
            out.extend(row.iter().map(|&b| (b'0' + b) as char));
            out.push('\n');
        }
        out
    }
}

fn unpack(r: u64, n: usize) -> Vec<u8> {
    (0..n).map(|j| ((r >> (n - 1 - j)) & 1) as u8).collect()
}

fn rank(n: usize, rows: &[u64]) -> usize {
    let mut m = rows.to_vec();
    let mut r = 0;
    for c in 0..n {
        let bit = 1u64 << (n - 1 - c);
        if let Some(p) = (r..m.len()).find(|&i| m[i] & bit != 0) {
            m.swap(r, p);
            for i in 0..m.len() {
                if i != r && m[i] & bit != 0 {
                    m[i] ^= m[r];
                }
            }
            r += 1;
        }
    }
    r
}

/// All `2^b` combinations of the basis, stepping through a Gray code so each
/// word differs from the previous by one basis vector.
fn gray_span(basis: &[u64]) -> Vec<u64> {
    let total = 1usize << basis.len();
    let mut out = Vec::with_capacity(total);
    let mut w = 0u64;
    out.push(w);
    for i in 1..total {
        w ^= basis[i.trailing_zeros() as usize];
        out.push(w);
    }
    out
}

/// All codewords of the dual of `code` as the rows of a simple binary array.
///
/// The strength is `d(C) - 1`; for `n <= 20` this is checked against the
/// counting verifier.
pub fn dual_code_oa(code: &LinearCode) -> Result<SymbolArray> {
    let basis = code.dual_basis();
    if basis.len() > MAX_DUAL_DIM {
        return Err(Error::param(format!(
            "dual dimension {} exceeds {MAX_DUAL_DIM}",
            basis.len()
        )));
    }
    let mut words = gray_span(&basis);
    words.sort_unstable();
    let a = SymbolArray::from_packed(code.len(), &words)?;

    require(
        a.num_rows() == 1 << (code.len() - code.dim()),
        "dual code has 2^(n - dim) words",
    )?;
    post_verify_simple(&a)?;
    for &g in &code.rows {
        require(
            words.iter().all(|&w| (w & g).count_ones() % 2 == 0),
            "dual words are orthogonal to the generator",
        )?;
    }
    if code.len() <= 20 {
        let expected = code.min_distance()?.min(code.len() + 1) - 1;
        let got = max_strength(&a);
        require(
            got == expected.min(code.len()),
            &format!("dual array strength {got} equals d(C) - 1 = {expected}"),
        )?;
    }
    Ok(a)
}
