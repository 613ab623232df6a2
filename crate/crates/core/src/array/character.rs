use std::ops::ControlFlow;

use rayon::prelude::*;

use super::SymbolArray;
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};

/// Calls `f` on every `v` in `{0..s-1}^k` of Hamming weight exactly `w`, in
/// lexicographic order. Stops early when `f` breaks.
pub fn for_each_tuple_of_weight<F>(k: usize, s: u8, w: usize, mut f: F) -> ControlFlow<()>
where
    F: FnMut(&[u8]) -> ControlFlow<()>,
{
    fn rec<F: FnMut(&[u8]) -> ControlFlow<()>>(
        v: &mut Vec<u8>,
        k: usize,
        s: u8,
        left: usize,
        f: &mut F,
    ) -> ControlFlow<()> {
        let pos = v.len();
        if pos == k {
            return f(v);
        }
        let room = k - pos;
        for x in 0..s {
            if (x == 0 && left >= room) || (x != 0 && left == 0) {
                continue;
            }
            let need = left - (x != 0) as usize;
            v.push(x);
            let r = rec(v, k, s, need, f);
            v.pop();
            r?;
        }
        ControlFlow::Continue(())
    }
    if w > k {
        return ControlFlow::Continue(());
    }
    let mut v = Vec::with_capacity(k);
    rec(&mut v, k, s, w, &mut f)
}

/// The matrix `H = [H_0 H_1 .. H_u]` with entry `(i, v) = zeta^(a_i . v)`,
/// columns indexed by all `v` of weight at most `u`.
///
/// Entries are stored as exponents of the primitive root `zeta`, so every
/// entry is exact. For `s = 2` they are the signs `(-1)^(a_i . v)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterMatrix {
    s: u8,
    u: usize,
    n: usize,
    /// Column labels: weight ascending, lexicographic within a weight.
    column_index: Vec<Vec<u8>>,
    /// Row-major `n x m` exponents in `0..s`.
    exponents: Vec<u8>,
}

impl CharacterMatrix {
    pub fn num_rows(&self) -> usize {
        self.n
    }

    pub fn num_cols(&self) -> usize {
        self.column_index.len()
    }

    pub fn half_strength(&self) -> usize {
        self.u
    }

    pub fn symbols(&self) -> u8 {
        self.s
    }

    pub fn column_index(&self) -> &[Vec<u8>] {
        &self.column_index
    }

    /// Exponent `e` with entry `(i, j) = zeta^e`.
    pub fn exponent(&self, i: usize, j: usize) -> u8 {
        self.exponents[i * self.num_cols() + j]
    }

    /// Entry as `+1` or `-1`; only meaningful for `s = 2`.
    pub fn sign(&self, i: usize, j: usize) -> Option<i8> {
        (self.s == 2).then(|| if self.exponent(i, j) == 0 { 1 } else { -1 })
    }

    /// Whether `H* H = N I`, decided exactly.
    ///
    /// Entry `(v, w)` of `H* H` is `sum_i zeta^(e_iw - e_iv)`; the diagonal is
    /// `N` by construction, so the test is that every off-diagonal sum
    /// vanishes in `Z[zeta]`.
    pub fn gram_is_scaled_identity(&self) -> bool {
        let m = self.num_cols();
        let s = self.s as usize;
        let field = Cyclotomic::new(s);
        (0..m).into_par_iter().all(|v| {
            let mut coeffs = vec![0i64; s];
            for w in 0..m {
                coeffs.iter_mut().for_each(|c| *c = 0);
                for i in 0..self.n {
                    let e = (s + self.exponent(i, w) as usize - self.exponent(i, v) as usize) % s;
                    coeffs[e] += 1;
                }
                let ok = if v == w {
                    coeffs[0] == self.n as i64
                } else {
                    field.is_zero(&coeffs)
                };
                if !ok {
                    return false;
                }
            }
            true
        })
    }
}

/// Builds the character matrix of `a` for half-strength `u`.
pub fn build_character_matrix(a: &SymbolArray, u: usize) -> Result<CharacterMatrix> {
    let k = a.num_cols();
    if u > k {
        return Err(Error::param(format!("u = {u} exceeds k = {k}")));
    }
    let s = a.symbols();
    let mut column_index = Vec::new();
    for w in 0..=u {
        let _ = for_each_tuple_of_weight(k, s, w, |v| {
            column_index.push(v.to_vec());
            ControlFlow::Continue(())
        });
    }
    let n = a.num_rows();
    let m = column_index.len();
    let mut exponents = Vec::with_capacity(n * m);
    for row in a.rows() {
        for v in &column_index {
            let e = row
                .iter()
                .zip(v)
                .fold(0usize, |acc, (&x, &y)| (acc + x as usize * y as usize) % s as usize);
            exponents.push(e as u8);
        }
    }
    Ok(CharacterMatrix {
        s,
        u,
        n,
        column_index,
        exponents,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: usize, r: usize) -> usize {
        (0..r).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn tuple_enumeration_counts_and_order() {
        for (k, s) in [(4usize, 2u8), (3, 3), (5, 2)] {
            for w in 0..=k {
                let mut seen = Vec::new();
                let _ = for_each_tuple_of_weight(k, s, w, |v| {
                    seen.push(v.to_vec());
                    ControlFlow::Continue(())
                });
                let expected = binom(k, w) * (s as usize - 1).pow(w as u32);
                assert_eq!(seen.len(), expected);
                assert!(seen.windows(2).all(|p| p[0] < p[1]));
                assert!(seen.iter().all(|v| v.iter().filter(|&&x| x != 0).count() == w));
            }
        }
    }

    #[test]
    fn u_zero_is_single_all_ones_column() {
        let a = SymbolArray::from_rows(3, 2, &[[0, 1, 1], [1, 1, 1]]).unwrap();
        let h = build_character_matrix(&a, 0).unwrap();
        assert_eq!(h.num_cols(), 1);
        assert_eq!(h.column_index()[0], vec![0, 0, 0]);
        assert!((0..2).all(|i| h.sign(i, 0) == Some(1)));
    }

    #[test]
    fn zero_row_gives_all_plus_one() {
        let a = SymbolArray::from_rows(5, 2, &[[0; 5]]).unwrap();
        let h = build_character_matrix(&a, 2).unwrap();
        assert_eq!(h.num_cols(), 16);
        assert!((0..16).all(|j| h.sign(0, j) == Some(1)));
    }

    #[test]
    fn non_orthogonal_pair_fails_gram() {
        let a = SymbolArray::from_rows(2, 2, &[[0, 0], [0, 1]]).unwrap();
        let h = build_character_matrix(&a, 1).unwrap();
        assert!(!h.gram_is_scaled_identity());
    }

    #[test]
    fn ternary_full_factorial_gram() {
        let a = SymbolArray::full_factorial(3, 3).unwrap();
        let h = build_character_matrix(&a, 1).unwrap();
        assert_eq!(h.num_cols(), 1 + 3 * 2);
        assert!(h.gram_is_scaled_identity());
        assert_eq!(h.sign(0, 0), None);
    }
}
