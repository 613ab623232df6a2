use std::ops::ControlFlow;

use itertools::Itertools;
use num_bigint::BigInt;
use rayon::prelude::*;

use super::character::for_each_tuple_of_weight;
use super::SymbolArray;
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::lp::{krawtchouk, Rational};

/// A `t`-column projection whose tuple counts are not all equal to lambda.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrengthWitness {
    /// Column subset, ascending.
    pub columns: Vec<usize>,
    pub tuple: Vec<u8>,
    pub observed: usize,
    /// `N / s^t`, possibly fractional.
    pub expected: Rational,
}

impl StrengthWitness {
    /// Recounts the witness tuple on `a`, independently of the verifier.
    pub fn replay(&self, a: &SymbolArray) -> usize {
        a.rows()
            .filter(|row| self.columns.iter().zip(&self.tuple).all(|(&c, &x)| row[c] == x))
            .count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrengthReport {
    pub requested_t: usize,
    pub holds: bool,
    pub lambda: Rational,
    /// Lexicographically first failing (columns, tuple) when `holds` is false.
    pub witness: Option<StrengthWitness>,
}

fn pow_checked(s: u8, t: usize) -> Option<usize> {
    (s as usize).checked_pow(u32::try_from(t).ok()?)
}

/// Checks that every `t`-column projection of `a` contains each `t`-tuple
/// exactly `N / s^t` times.
pub fn verify_strength(a: &SymbolArray, t: usize) -> Result<StrengthReport> {
    let k = a.num_cols();
    if t > k {
        return Err(Error::param(format!("strength {t} exceeds k = {k}")));
    }
    let n = a.num_rows();
    let s = a.symbols();
    let lambda = match pow_checked(s, t) {
        Some(st) => Rational::new(BigInt::from(n), BigInt::from(st)),
        None => Rational::new(BigInt::from(n), BigInt::from(s).pow(t as u32)),
    };
    if t == 0 {
        return Ok(StrengthReport {
            requested_t: 0,
            holds: true,
            lambda,
            witness: None,
        });
    }

    // lambda is not a positive integer: every tuple of the first subset
    // disagrees with it. Report the first absent one if there is one.
    let st = match pow_checked(s, t) {
        Some(st) if st <= n && n % st == 0 => st,
        small => {
            let columns: Vec<usize> = (0..t).collect();
            let tuple = match small.filter(|&st| st <= 1 << 20) {
                Some(st) => {
                    let mut seen = vec![false; st];
                    for row in a.rows() {
                        let code = row[..t].iter().fold(0usize, |acc, &x| acc * s as usize + x as usize);
                        seen[code] = true;
                    }
                    let code = seen.iter().position(|&b| !b).unwrap_or(0);
                    decode(code, s, t)
                }
                None => vec![0u8; t],
            };
            let mut w = StrengthWitness {
                columns,
                tuple,
                observed: 0,
                expected: lambda.clone(),
            };
            w.observed = w.replay(a);
            return Ok(StrengthReport {
                requested_t: t,
                holds: false,
                lambda,
                witness: Some(w),
            });
        }
    };
    let lam = n / st;

    // Parallel over the first column of the subset; `find_map_first` keeps
    // the lexicographically first failure regardless of scheduling.
    let failure = (0..=k - t).into_par_iter().find_map_first(|first| {
        let mut counts = vec![0usize; st];
        for rest in ((first + 1)..k).combinations(t - 1) {
            let mut cols = Vec::with_capacity(t);
            cols.push(first);
            cols.extend_from_slice(&rest);
            counts.iter_mut().for_each(|c| *c = 0);
            for row in a.rows() {
                let code = cols.iter().fold(0usize, |acc, &c| acc * s as usize + row[c] as usize);
                counts[code] += 1;
            }
            if let Some(code) = counts.iter().position(|&c| c != lam) {
                return Some((cols, decode(code, s, t), counts[code]));
            }
        }
        None
    });

    let witness = failure.map(|(columns, tuple, observed)| StrengthWitness {
        columns,
        tuple,
        observed,
        expected: lambda.clone(),
    });
    Ok(StrengthReport {
        requested_t: t,
        holds: witness.is_none(),
        lambda,
        witness,
    })
}

fn decode(mut code: usize, s: u8, t: usize) -> Vec<u8> {
    let mut tuple = vec![0u8; t];
    for x in tuple.iter_mut().rev() {
        *x = (code % s as usize) as u8;
        code /= s as usize;
    }
    tuple
}

/// Largest `t` for which `a` is an orthogonal array of strength `t`.
pub fn max_strength(a: &SymbolArray) -> usize {
    (1..=a.num_cols())
        .take_while(|&t| verify_strength(a, t).map(|r| r.holds).unwrap_or(false))
        .last()
        .unwrap_or(0)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterSumCheck {
    pub holds: bool,
    /// First `v` (weight ascending, then lexicographic) with a nonzero sum.
    pub failing_v: Option<Vec<u8>>,
}

/// Decides strength `t` through character sums: `a` has strength `t` iff
/// `sum_i zeta^(a_i . v) = 0` for every `v` with `1 <= wt(v) <= t`.
///
/// Sums are decided exactly in `Z[zeta]`.
pub fn character_sum_check(a: &SymbolArray, t: usize) -> Result<CharacterSumCheck> {
    let k = a.num_cols();
    if t > k {
        return Err(Error::param(format!("strength {t} exceeds k = {k}")));
    }
    let s = a.symbols() as usize;
    let field = Cyclotomic::new(s);
    let mut coeffs = vec![0i64; s];
    let mut support = Vec::with_capacity(k);
    let mut failing = None;
    for w in 1..=t {
        let flow = for_each_tuple_of_weight(k, a.symbols(), w, |v| {
            support.clear();
            support.extend((0..k).filter(|&j| v[j] != 0));
            coeffs.iter_mut().for_each(|c| *c = 0);
            for row in a.rows() {
                let e = support
                    .iter()
                    .fold(0usize, |acc, &j| (acc + row[j] as usize * v[j] as usize) % s);
                coeffs[e] += 1;
            }
            if field.is_zero(&coeffs) {
                ControlFlow::Continue(())
            } else {
                failing = Some(v.to_vec());
                ControlFlow::Break(())
            }
        });
        if flow.is_break() {
            break;
        }
    }
    Ok(CharacterSumCheck {
        holds: failing.is_none(),
        failing_v: failing,
    })
}

/// Ordered-pair distance distribution of a binary array: entry `d` counts
/// pairs `(i, j)`, including `i = j`, at Hamming distance `d`.
pub fn distance_distribution(a: &SymbolArray) -> Result<Vec<u64>> {
    let rows = a
        .packed_rows()
        .ok_or_else(|| Error::param("distance distribution needs s = 2 and k <= 64"))?;
    let k = a.num_cols();
    let dist = rows
        .par_iter()
        .map(|&x| {
            let mut local = vec![0u64; k + 1];
            for &y in &rows {
                local[(x ^ y).count_ones() as usize] += 1;
            }
            local
        })
        .reduce(
            || vec![0u64; k + 1],
            |mut acc, v| {
                acc.iter_mut().zip(v).for_each(|(a, b)| *a += b);
                acc
            },
        );
    Ok(dist)
}

/// Maximum strength of a binary array from its distance distribution: the
/// array has strength `t` iff `sum_d D_d K_j(d) = 0` for `1 <= j <= t`.
///
/// This costs `O(N^2)` word operations and is independent of `k`, which makes
/// it the practical route for wide arrays.
pub fn max_strength_via_distances(a: &SymbolArray) -> Result<usize> {
    let k = a.num_cols();
    let dist = distance_distribution(a)?;
    for j in 1..=k {
        let mut sum = 0i128;
        for (d, &count) in dist.iter().enumerate() {
            if count != 0 {
                sum += count as i128 * krawtchouk(j, d, k)?;
            }
        }
        if sum != 0 {
            return Ok(j - 1);
        }
    }
    Ok(k)
}
