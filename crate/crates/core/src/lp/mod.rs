//! Delsarte's linear programming bound for binary orthogonal arrays.
//!
//! For a binary array of strength `t` with `k` columns, let `A_i` be the
//! average number of rows at distance `i` from a row. Then `A_0 = 1` (for a
//! simple array), `A_i >= 0`, `sum_i A_i = N`, and the Krawtchouk transform
//! `sum_i K_j(i) A_i` vanishes for `1 <= j <= t` and is nonnegative above
//! `t`. Minimizing `sum_i A_i` over that polytope gives a lower bound on `N`.
//!
//! Repeated rows scale `A_0` above one; dividing the distribution by `A_0`
//! gives a feasible point with objective `N / A_0 <= N`, so the bound holds
//! for every array, simple or not.
//!
//! The program is solved exactly over the rationals and returned together
//! with dual multipliers, so the optimum can be rechecked by
//! [`verify_certificate`] without trusting the solver.

mod simplex;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact rational with arbitrary-precision numerator and denominator, always
/// in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

/// Largest `n` accepted by [`krawtchouk`]; keeps every term inside `i128`.
pub const MAX_KRAWTCHOUK_N: usize = 120;

/// Binary Krawtchouk polynomial `K_j(x; n) = sum_i (-1)^i C(x, i) C(n-x, j-i)`.
pub fn krawtchouk(j: usize, x: usize, n: usize) -> Result<i128> {
    if j > n || x > n || n > MAX_KRAWTCHOUK_N {
        return Err(Error::param(format!(
            "krawtchouk needs 0 <= j, x <= n <= {MAX_KRAWTCHOUK_N}, got j = {j}, x = {x}, n = {n}"
        )));
    }
    let mut sum = 0i128;
    for i in 0..=j.min(x) {
        if j - i > n - x {
            continue;
        }
        let term = binomial(x, i) * binomial(n - x, j - i);
        if i % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    Ok(sum)
}

pub(crate) fn binomial(n: usize, r: usize) -> i128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    (0..r).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128)
}

/// Optimal solution of the Delsarte program together with its certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpCertificate {
    pub k: usize,
    pub t: usize,
    pub optimum: Rational,
    /// Optimal distance distribution `A_0, .., A_k`.
    pub distribution: Vec<Rational>,
    /// Dual multipliers `y_0, .., y_k`: `y_0` for `A_0 = 1`, `y_j` for the
    /// `j`-th transform constraint.
    pub dual: Vec<Rational>,
    /// `ceil(optimum)` rounded up to a multiple of `2^t`. Reported alongside
    /// the raw optimum, never in place of it.
    pub integer_bound: BigInt,
}

/// Solves the Delsarte program for `(k, t)` exactly.
pub fn lp_bound(k: usize, t: usize) -> Result<LpCertificate> {
    if t == 0 || t > k {
        return Err(Error::param(format!("lp bound needs 1 <= t <= k, got k = {k}, t = {t}")));
    }
    if k > 64 {
        return Err(Error::param(format!("lp bound supports k <= 64, got {k}")));
    }
    let kraw = krawtchouk_table(k)?;

    // Columns: A_0..A_k, then one surplus variable per inequality j > t.
    let n_dist = k + 1;
    let n_cols = n_dist + (k - t);
    let mut rows = Vec::with_capacity(k + 1);
    let mut rhs = Vec::with_capacity(k + 1);

    let mut first = vec![Rational::zero(); n_cols];
    first[0] = Rational::one();
    rows.push(first);
    rhs.push(Rational::one());
    for j in 1..=k {
        let mut row = vec![Rational::zero(); n_cols];
        for (i, cell) in row.iter_mut().take(n_dist).enumerate() {
            *cell = Rational::from_integer(kraw[j][i].into());
        }
        if j > t {
            row[n_dist + (j - t - 1)] = -Rational::one();
        }
        rows.push(row);
        rhs.push(Rational::zero());
    }
    let mut cost = vec![Rational::zero(); n_cols];
    cost[..n_dist].iter_mut().for_each(|c| *c = Rational::one());

    let sol = simplex::minimize(&rows, &rhs, &cost).ok_or_else(|| {
        Error::Verification(format!("Delsarte program for k = {k}, t = {t} reported infeasible"))
    })?;
    let distribution = sol.x[..n_dist].to_vec();
    let optimum = sol.objective;
    let integer_bound = lift_to_multiple(&optimum, t);

    let cert = LpCertificate {
        k,
        t,
        optimum,
        distribution,
        dual: sol.dual,
        integer_bound,
    };
    verify_certificate(&cert).map_err(|v| Error::Verification(v.to_string()))?;
    Ok(cert)
}

fn lift_to_multiple(x: &Rational, t: usize) -> BigInt {
    let ceil = x.ceil().to_integer();
    let step = BigInt::one() << t;
    let (q, r) = ceil.div_rem(&step);
    if r.is_zero() {
        ceil
    } else {
        (q + 1) * step
    }
}

fn krawtchouk_table(k: usize) -> Result<Vec<Vec<i128>>> {
    (0..=k)
        .map(|j| (0..=k).map(|x| krawtchouk(j, x, k)).collect())
        .collect()
}

/// A constraint a certificate fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Shape(String),
    /// `A_0` differs from one.
    Normalization,
    Negative { index: usize },
    /// `sum_i K_j(i) A_i = 0` fails for `j <= t`.
    Equality { j: usize, value: Rational },
    /// `sum_i K_j(i) A_i >= 0` fails for `j > t`.
    Inequality { j: usize, value: Rational },
    Objective,
    DualSign { j: usize },
    DualFeasibility { index: usize, value: Rational },
    DualityGap { primal: Rational, dual: Rational },
    IntegerBound,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Shape(msg) => write!(f, "malformed certificate: {msg}"),
            Violation::Normalization => write!(f, "A_0 != 1"),
            Violation::Negative { index } => write!(f, "A_{index} < 0"),
            Violation::Equality { j, value } => {
                write!(f, "equality constraint j = {j} violated: sum K_{j}(i) A_i = {value}")
            }
            Violation::Inequality { j, value } => {
                write!(f, "inequality constraint j = {j} violated: sum K_{j}(i) A_i = {value}")
            }
            Violation::Objective => write!(f, "optimum differs from sum of A_i"),
            Violation::DualSign { j } => write!(f, "dual multiplier y_{j} is negative"),
            Violation::DualFeasibility { index, value } => {
                write!(f, "dual constraint for A_{index} violated: value {value} > 1")
            }
            Violation::DualityGap { primal, dual } => {
                write!(f, "duality gap: primal {primal}, dual {dual}")
            }
            Violation::IntegerBound => write!(f, "integer bound is not the lifted optimum"),
        }
    }
}

/// Replays every primal constraint and the dual optimality identity in exact
/// arithmetic, independently of the solver.
pub fn verify_certificate(cert: &LpCertificate) -> std::result::Result<(), Violation> {
    let (k, t) = (cert.k, cert.t);
    if t == 0 || t > k || k > MAX_KRAWTCHOUK_N {
        return Err(Violation::Shape(format!("k = {k}, t = {t}")));
    }
    if cert.distribution.len() != k + 1 || cert.dual.len() != k + 1 {
        return Err(Violation::Shape("vectors must have length k + 1".into()));
    }
    let kraw = krawtchouk_table(k).map_err(|e| Violation::Shape(e.to_string()))?;
    let a = &cert.distribution;

    if !a[0].is_one() {
        return Err(Violation::Normalization);
    }
    if let Some(index) = a.iter().position(|x| x.is_negative()) {
        return Err(Violation::Negative { index });
    }
    for j in 1..=k {
        let value: Rational = a
            .iter()
            .enumerate()
            .map(|(i, x)| x * Rational::from_integer(kraw[j][i].into()))
            .sum();
        if j <= t && !value.is_zero() {
            return Err(Violation::Equality { j, value });
        }
        if j > t && value.is_negative() {
            return Err(Violation::Inequality { j, value });
        }
    }
    let total: Rational = a.iter().sum();
    if total != cert.optimum {
        return Err(Violation::Objective);
    }

    // Dual: maximize y_0 subject to y_0 [i = 0] + sum_j y_j K_j(i) <= 1 for
    // every i, with y_j >= 0 for the inequality rows. Weak duality then gives
    // sum_i A_i >= y_0 for every feasible distribution.
    let y = &cert.dual;
    if let Some(j) = (t + 1..=k).find(|&j| y[j].is_negative()) {
        return Err(Violation::DualSign { j });
    }
    for i in 0..=k {
        let mut value: Rational = (1..=k)
            .map(|j| &y[j] * Rational::from_integer(kraw[j][i].into()))
            .sum();
        if i == 0 {
            value += &y[0];
        }
        if value > Rational::one() {
            return Err(Violation::DualFeasibility { index: i, value });
        }
    }
    if y[0] != cert.optimum {
        return Err(Violation::DualityGap {
            primal: cert.optimum.clone(),
            dual: y[0].clone(),
        });
    }
    if cert.integer_bound != lift_to_multiple(&cert.optimum, t) {
        return Err(Violation::IntegerBound);
    }
    Ok(())
}

/// Rational as a pair of decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalJson {
    pub num: String,
    pub den: String,
}

impl From<&Rational> for RationalJson {
    fn from(r: &Rational) -> Self {
        RationalJson {
            num: r.numer().to_string(),
            den: r.denom().to_string(),
        }
    }
}

impl TryFrom<&RationalJson> for Rational {
    type Error = Error;

    fn try_from(r: &RationalJson) -> Result<Self> {
        let num: BigInt = r.num.parse().map_err(|_| Error::param("bad numerator"))?;
        let den: BigInt = r.den.parse().map_err(|_| Error::param("bad denominator"))?;
        if den.is_zero() {
            return Err(Error::param("zero denominator"));
        }
        Ok(Rational::new(num, den))
    }
}

/// Wire form of [`LpCertificate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LpCertificateJson {
    pub k: usize,
    pub t: usize,
    pub optimum: RationalJson,
    #[serde(rename = "A")]
    pub distribution: Vec<RationalJson>,
    pub dual: Vec<RationalJson>,
    pub integer_bound: String,
}

impl From<&LpCertificate> for LpCertificateJson {
    fn from(c: &LpCertificate) -> Self {
        LpCertificateJson {
            k: c.k,
            t: c.t,
            optimum: (&c.optimum).into(),
            distribution: c.distribution.iter().map(Into::into).collect(),
            dual: c.dual.iter().map(Into::into).collect(),
            integer_bound: c.integer_bound.to_string(),
        }
    }
}

impl TryFrom<&LpCertificateJson> for LpCertificate {
    type Error = Error;

    fn try_from(c: &LpCertificateJson) -> Result<Self> {
        let conv = |v: &[RationalJson]| -> Result<Vec<Rational>> {
            v.iter().map(Rational::try_from).collect()
        };
        Ok(LpCertificate {
            k: c.k,
            t: c.t,
            optimum: (&c.optimum).try_into()?,
            distribution: conv(&c.distribution)?,
            dual: conv(&c.dual)?,
            integer_bound: c
                .integer_bound
                .parse()
                .map_err(|_| Error::param("bad integer bound"))?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn low_degree_krawtchouk() {
        for n in 0..=12 {
            for x in 0..=n {
                assert_eq!(krawtchouk(0, x, n).unwrap(), 1);
                if n >= 1 {
                    assert_eq!(krawtchouk(1, x, n).unwrap(), n as i128 - 2 * x as i128);
                }
            }
        }
        assert!(krawtchouk(3, 1, 2).is_err());
        assert!(krawtchouk(1, 3, 2).is_err());
    }

    #[test]
    fn krawtchouk_orthogonal_to_binomial_weights() {
        for n in 1..=16 {
            for j in 1..=n {
                let s: i128 = (0..=n).map(|x| binomial(n, x) * krawtchouk(j, x, n).unwrap()).sum();
                assert_eq!(s, 0, "n = {n}, j = {j}");
            }
        }
    }

    #[test]
    fn small_lp_values() {
        let c = lp_bound(5, 4).unwrap();
        assert_eq!(c.optimum, int(16));
        assert_eq!(c.distribution[0], int(1));
        let c = lp_bound(3, 1).unwrap();
        assert_eq!(c.optimum, int(2));
    }

    #[test]
    fn lifted_integer_bound() {
        assert_eq!(lift_to_multiple(&Rational::new(256.into(), 3.into()), 4), BigInt::from(96));
        assert_eq!(lift_to_multiple(&int(64), 4), BigInt::from(64));
        let c = lp_bound(10, 4).unwrap();
        assert_eq!(c.optimum, Rational::new(256.into(), 3.into()));
        assert_eq!(c.integer_bound, BigInt::from(96));
    }

    #[test]
    fn lp_rejects_bad_parameters() {
        assert!(lp_bound(5, 0).is_err());
        assert!(lp_bound(5, 6).is_err());
    }

    #[test]
    fn corrupted_certificates_are_rejected() {
        let good = lp_bound(8, 4).unwrap();
        assert_eq!(verify_certificate(&good), Ok(()));

        let mut c = good.clone();
        c.distribution[0] = int(2);
        assert_eq!(verify_certificate(&c), Err(Violation::Normalization));

        let mut c = good.clone();
        c.optimum += int(1);
        assert_eq!(verify_certificate(&c), Err(Violation::Objective));

        let mut c = good.clone();
        c.dual[0] -= int(1);
        assert!(matches!(verify_certificate(&c), Err(Violation::DualityGap { .. })));

        let mut c = good.clone();
        c.integer_bound += 1;
        assert_eq!(verify_certificate(&c), Err(Violation::IntegerBound));

        let mut c = good;
        c.dual.pop();
        assert!(matches!(verify_certificate(&c), Err(Violation::Shape(_))));
    }

    #[test]
    fn json_round_trip() {
        let c = lp_bound(6, 2).unwrap();
        let wire = LpCertificateJson::from(&c);
        let text = serde_json::to_string(&wire).unwrap();
        assert!(text.contains("\"A\""));
        let back: LpCertificateJson = serde_json::from_str(&text).unwrap();
        assert_eq!(LpCertificate::try_from(&back).unwrap(), c);
    }
}
