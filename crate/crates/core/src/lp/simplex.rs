//! Dense two-phase primal simplex over exact rationals with Bland's rule.

use num_traits::{One, Signed, Zero};

use super::Rational;

pub(super) struct Solution {
    pub x: Vec<Rational>,
    pub objective: Rational,
    /// One multiplier per equality row: `y = c_B B^-1`.
    pub dual: Vec<Rational>,
}

struct Tableau {
    /// `m` rows of `n_struct + m` coefficients (structural then artificial).
    a: Vec<Vec<Rational>>,
    b: Vec<Rational>,
    basis: Vec<usize>,
    n_struct: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.a[r][c].clone();
        for x in self.a[r].iter_mut() {
            *x /= &p;
        }
        self.b[r] /= &p;
        let prow = self.a[r].clone();
        let pb = self.b[r].clone();
        for i in 0..self.a.len() {
            if i == r || self.a[i][c].is_zero() {
                continue;
            }
            let f = self.a[i][c].clone();
            for (x, y) in self.a[i].iter_mut().zip(&prow) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            self.b[i] -= &f * &pb;
        }
        self.basis[r] = c;
    }

    fn reduced_costs(&self, cost: &[Rational]) -> Vec<Rational> {
        let mut d = cost.to_vec();
        for (r, &bv) in self.basis.iter().enumerate() {
            let cb = &cost[bv];
            if cb.is_zero() {
                continue;
            }
            for (dj, arj) in d.iter_mut().zip(&self.a[r]) {
                if !arj.is_zero() {
                    *dj -= cb * arj;
                }
            }
        }
        d
    }

    /// Runs simplex iterations for `cost` over columns `< allowed`. Returns
    /// `false` if the objective is unbounded below.
    fn optimize(&mut self, cost: &[Rational], allowed: usize) -> bool {
        loop {
            let d = self.reduced_costs(cost);
            // Bland: lowest-index improving column, lowest-index leaving basic.
            let Some(c) = (0..allowed).find(|&j| d[j].is_negative()) else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for r in 0..self.a.len() {
                if !self.a[r][c].is_positive() {
                    continue;
                }
                let ratio = &self.b[r] / &self.a[r][c];
                let better = match &best {
                    None => true,
                    Some((br, bratio)) => {
                        ratio < *bratio || (ratio == *bratio && self.basis[r] < self.basis[*br])
                    }
                };
                if better {
                    best = Some((r, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, c),
                None => return false,
            }
        }
    }
}

/// Minimizes `cost . x` subject to `rows x = rhs`, `x >= 0`, with `rhs >= 0`.
///
/// Returns `None` when the program is infeasible or unbounded.
pub(super) fn minimize(rows: &[Vec<Rational>], rhs: &[Rational], cost: &[Rational]) -> Option<Solution> {
    let m = rows.len();
    let n = cost.len();
    debug_assert!(rhs.iter().all(|b| !b.is_negative()));

    let a = rows
        .iter()
        .enumerate()
        .map(|(r, row)| {
            let mut full = row.clone();
            full.extend((0..m).map(|i| if i == r { Rational::one() } else { Rational::zero() }));
            full
        })
        .collect();
    let mut tab = Tableau {
        a,
        b: rhs.to_vec(),
        basis: (n..n + m).collect(),
        n_struct: n,
    };

    // Phase 1: drive the artificial variables to zero.
    let mut phase1 = vec![Rational::zero(); n + m];
    phase1[n..].iter_mut().for_each(|c| *c = Rational::one());
    tab.optimize(&phase1, n + m);
    let infeasibility: Rational = tab
        .basis
        .iter()
        .zip(&tab.b)
        .filter(|(&bv, _)| bv >= n)
        .map(|(_, b)| b.clone())
        .sum();
    if !infeasibility.is_zero() {
        return None;
    }
    // Pivot zero-level artificials out where a structural column allows it;
    // rows where none does are redundant and stay inert.
    for r in 0..m {
        if tab.basis[r] >= n {
            if let Some(c) = (0..n).find(|&j| !tab.a[r][j].is_zero()) {
                tab.pivot(r, c);
            }
        }
    }

    // Phase 2 on the structural columns only.
    let mut phase2 = cost.to_vec();
    phase2.extend((0..m).map(|_| Rational::zero()));
    if !tab.optimize(&phase2, tab.n_struct) {
        return None;
    }

    let mut x = vec![Rational::zero(); n];
    for (r, &bv) in tab.basis.iter().enumerate() {
        if bv < n {
            x[bv] = tab.b[r].clone();
        }
    }
    let objective = x.iter().zip(cost).map(|(xi, ci)| xi * ci).sum();
    // Artificial columns hold B^-1, so y_r = sum_i c_B(i) (B^-1)_{i r}.
    let dual = (0..m)
        .map(|r| {
            tab.basis
                .iter()
                .enumerate()
                .map(|(i, &bv)| &phase2[bv] * &tab.a[i][n + r])
                .sum()
        })
        .collect();
    Some(Solution { x, objective, dual })
}
