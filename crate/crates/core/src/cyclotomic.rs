//! Exact zero test for integer combinations of `s`-th roots of unity.
//!
//! An element `sum_e c_e * zeta^e` of `Z[zeta]` (with `zeta` a primitive
//! `s`-th root of unity) is zero iff the polynomial `sum_e c_e x^e` is
//! divisible by the cyclotomic polynomial `Phi_s`.

#[derive(Debug, Clone)]
pub(crate) struct Cyclotomic {
    s: usize,
    /// Coefficients of `Phi_s`, lowest degree first; monic.
    phi: Vec<i64>,
}

impl Cyclotomic {
    pub(crate) fn new(s: usize) -> Self {
        assert!(s >= 1);
        Cyclotomic {
            s,
            phi: cyclotomic_polynomial(s),
        }
    }

    /// Whether `sum_e coeffs[e] * zeta^e` vanishes; `coeffs.len()` must be `s`.
    pub(crate) fn is_zero(&self, coeffs: &[i64]) -> bool {
        debug_assert_eq!(coeffs.len(), self.s);
        if self.s == 2 {
            return coeffs[0] == coeffs[1];
        }
        let mut rem: Vec<i128> = coeffs.iter().map(|&c| c as i128).collect();
        let d = self.phi.len() - 1;
        for top in (d..rem.len()).rev() {
            let c = rem[top];
            if c == 0 {
                continue;
            }
            for (i, &p) in self.phi.iter().enumerate() {
                rem[top - d + i] -= c * p as i128;
            }
        }
        rem[..d].iter().all(|&c| c == 0)
    }
}

/// `Phi_n` by dividing `x^n - 1` by `Phi_d` for every proper divisor `d`.
fn cyclotomic_polynomial(n: usize) -> Vec<i64> {
    let mut p = vec![0i64; n + 1];
    p[0] = -1;
    p[n] = 1;
    for d in (1..n).filter(|d| n % d == 0) {
        p = divide_monic(&p, &cyclotomic_polynomial(d));
    }
    p
}

fn divide_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut q = vec![0i64; num.len() - dd];
    for i in (0..q.len()).rev() {
        let c = rem[i + dd];
        q[i] = c;
        for (j, &y) in den.iter().enumerate() {
            rem[i + j] -= c * y;
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    q
}
