//! Closed-form lower bounds on the row count and the simplicity verdicts
//! that follow from the Rao bound.

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::array::{character_sum_check, MultiplicityCensus, SymbolArray};
use crate::constructions::even_weight_oa;
use crate::error::{Error, Result};
use crate::lp::{lp_bound, LpCertificate, Rational};

fn binom_u128(n: usize, r: usize) -> Option<u128> {
    if r > n {
        return Some(0);
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

/// `M(k, s, 2u) = sum_{j=0..u} C(k, j) (s-1)^j`.
fn rao_even(k: usize, s: u32, u: usize) -> Result<u128> {
    let mut total: u128 = 0;
    for j in 0..=u.min(k) {
        let term = binom_u128(k, j)
            .and_then(|c| c.checked_mul((s as u128 - 1).checked_pow(j as u32)?))
            .ok_or(Error::Overflow("rao bound"))?;
        total = total.checked_add(term).ok_or(Error::Overflow("rao bound"))?;
    }
    Ok(total)
}

/// Rao's lower bound `M(k, s, t)`.
///
/// For even `t = 2u` this is `sum_{j<=u} C(k,j)(s-1)^j`. Odd strengths are
/// supported only for `s = 2`, through `F(k, 2, 2u+1) = 2 F(k-1, 2, 2u)`:
/// the bound is `2 M(k-1, 2, 2u)`.
pub fn rao_bound(k: usize, s: u32, t: usize) -> Result<u128> {
    if s < 2 {
        return Err(Error::param(format!("alphabet size {s} is below 2")));
    }
    if t > k {
        return Err(Error::param(format!("strength {t} exceeds k = {k}")));
    }
    if t % 2 == 0 {
        rao_even(k, s, t / 2)
    } else if s == 2 {
        rao_even(k - 1, 2, (t - 1) / 2)?
            .checked_mul(2)
            .ok_or(Error::Overflow("rao bound"))
    } else {
        Err(Error::param("odd-strength Rao bound is only available for s = 2"))
    }
}

/// Friedman-Bierbrauer bound `s^k (1 - (s-1) k / (s (t+1)))`, exact; may be
/// nonpositive, in which case it says nothing.
pub fn friedman_bierbrauer(k: usize, s: u32, t: usize) -> Rational {
    let sk = BigInt::from(s).pow(k as u32);
    let frac = Rational::new(
        BigInt::from((s as u64 - 1) * k as u64),
        BigInt::from(s as u64 * (t as u64 + 1)),
    );
    Rational::from_integer(sk) * (Rational::one() - frac)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Khalyavin {
    /// `t >= (2k - 2) / 3`, where `N >= 2^(k-1)` holds.
    pub applicable: bool,
    /// Applicable and `N = 2^(k-1)`: such an array must be simple.
    pub simplicity_forced_at_equality: bool,
}

/// Khalyavin's criterion for binary arrays.
pub fn khalyavin_criterion(k: usize, t: usize, n: u128) -> Khalyavin {
    let applicable = 3 * t + 2 >= 2 * k;
    let forced = applicable && (1..=128).contains(&k) && n == 1u128 << (k - 1);
    Khalyavin {
        applicable,
        simplicity_forced_at_equality: forced,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SimplicityCase {
    /// `N < 2M`: every array is simple.
    ForcedSimple,
    /// `2M <= N < 3M`: multiplicities are at most two.
    #[serde(rename = "multiplicity_at_most_2")]
    MultiplicityAtMost2,
    /// `s = 2, u = 2, k >= 5, N = 2M`: simple, or `k = 5` and the array is two
    /// copies of the `OA(16, 5, 2, 4)`.
    BoundaryDoubledCase,
    NoConclusion,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicityVerdict {
    pub case: SimplicityCase,
    /// `floor(N / M)`: no row can occur more often.
    pub rho_max_bound: u128,
    pub rao: u128,
    pub details: String,
}

/// What the Rao bound says about any `OA(N, k, s, 2u)`.
pub fn theorem1_verdict(n: u128, k: usize, s: u32, u: usize) -> Result<SimplicityVerdict> {
    if u == 0 || 2 * u > k {
        return Err(Error::param(format!("verdict needs 1 <= u and 2u <= k, got u = {u}, k = {k}")));
    }
    let m = rao_bound(k, s, 2 * u)?;
    let rho_max_bound = n / m;
    let (case, details) = if n < m {
        (
            SimplicityCase::ForcedSimple,
            format!("N = {n} < M = {m}: no OA({n},{k},{s},{}) exists", 2 * u),
        )
    } else if s == 2 && u == 2 && k >= 5 && n == 2 * m {
        let extra = if k == 5 {
            "either simple, or two copies of the OA(16,5,2,4)"
        } else {
            "the array is simple"
        };
        (
            SimplicityCase::BoundaryDoubledCase,
            format!("N = 2M = {n} = k^2 + k + 2: {extra}"),
        )
    } else if n < 2 * m {
        (
            SimplicityCase::ForcedSimple,
            format!("N = {n} < 2M = {}: every row is distinct", 2 * m),
        )
    } else if n < 3 * m {
        (
            SimplicityCase::MultiplicityAtMost2,
            format!("2M = {} <= N = {n} < 3M = {}: every multiplicity is at most 2", 2 * m, 3 * m),
        )
    } else {
        (
            SimplicityCase::NoConclusion,
            format!("N = {n} >= 3M = {}: multiplicity at most {rho_max_bound}", 3 * m),
        )
    };
    Ok(SimplicityVerdict {
        case,
        rho_max_bound,
        rao: m,
        details,
    })
}

/// A verdict checked against a concrete array.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrayAnalysis {
    pub verdict: SimplicityVerdict,
    pub census: MultiplicityCensus,
    /// `rho_max <= floor(N / M)`.
    pub multiplicity_law_holds: bool,
    /// `N = M`.
    pub rao_tight: bool,
    /// In the boundary case with `k = 5` and repeated rows: whether the array
    /// is two copies of a translate of the even-weight array.
    pub boundary_confirmed: Option<bool>,
}

impl ArrayAnalysis {
    /// Whether the array agrees with every claim of the verdict.
    pub fn consistent(&self) -> bool {
        let simple_ok = match self.verdict.case {
            SimplicityCase::ForcedSimple => self.census.is_simple,
            SimplicityCase::MultiplicityAtMost2 => self.census.max_multiplicity <= 2,
            SimplicityCase::BoundaryDoubledCase => {
                self.census.is_simple || self.boundary_confirmed == Some(true)
            }
            SimplicityCase::NoConclusion => true,
        };
        simple_ok && self.multiplicity_law_holds
    }
}

/// Applies the verdict for `(N, k, s, u)` to `a`, which must have strength `2u`.
pub fn analyze_array(a: &SymbolArray, u: usize) -> Result<ArrayAnalysis> {
    let k = a.num_cols();
    if u == 0 || 2 * u > k {
        return Err(Error::param(format!("analysis needs 1 <= u and 2u <= k, got u = {u}, k = {k}")));
    }
    if !character_sum_check(a, 2 * u)?.holds {
        return Err(Error::InsufficientStrength { required: 2 * u });
    }
    let n = a.num_rows() as u128;
    let s = a.symbols() as u32;
    let verdict = theorem1_verdict(n, k, s, u)?;
    let census = MultiplicityCensus::of(a);
    let multiplicity_law_holds = census.max_multiplicity as u128 <= verdict.rho_max_bound;
    let boundary_confirmed = (verdict.case == SimplicityCase::BoundaryDoubledCase
        && k == 5
        && !census.is_simple)
        .then(|| is_doubled_even_weight_translate(&census));
    Ok(ArrayAnalysis {
        rao_tight: n == verdict.rao,
        verdict,
        census,
        multiplicity_law_holds,
        boundary_confirmed,
    })
}

fn is_doubled_even_weight_translate(census: &MultiplicityCensus) -> bool {
    if !census.is_uniform(2) {
        return false;
    }
    let Some(first) = census.counts.keys().next() else {
        return false;
    };
    let Ok(even) = even_weight_oa(first.len()) else {
        return false;
    };
    let Ok(shifted) = even.translate(first) else {
        return false;
    };
    let shifted = MultiplicityCensus::of(&shifted);
    shifted.counts.len() == census.counts.len()
        && shifted.counts.keys().zip(census.counts.keys()).all(|(x, y)| x == y)
}

/// `F_upper < 2 M(k, s, t)` for even `t`: then simple and general minima
/// coincide.
pub fn corollary1_applies(k: usize, s: u32, t: usize, f_upper: u128) -> Result<bool> {
    if t % 2 != 0 {
        return Err(Error::param("the corollary needs an even strength"));
    }
    Ok(f_upper < 2 * rao_bound(k, s, t)?)
}

/// Whether `2^(m - 1/2) <= k <= 2^m - 1` for some even `m >= 4`, and which.
pub fn kerdock_interval_contains(k: u64) -> (bool, Option<u32>) {
    let k2 = k as u128 * k as u128;
    let mut m = 4u32;
    loop {
        let low_sq = 1u128 << (2 * m - 1);
        if low_sq > k2 {
            return (false, None);
        }
        if k < (1u64 << m) {
            return (true, Some(m));
        }
        m += 2;
        if m >= 62 {
            return (false, None);
        }
    }
}

/// `(l1, l2) = ((k+1 + sqrt(k-1)) / 2, (k+1 - sqrt(k-1)) / 2)` when both are
/// integers.
pub fn ell_weights(k: u64) -> Option<(u64, u64)> {
    if k == 0 {
        return None;
    }
    let kappa = (k - 1).sqrt();
    if kappa * kappa != k - 1 || (k + 1 + kappa) % 2 != 0 {
        return None;
    }
    Some(((k + 1 + kappa) / 2, (k + 1 - kappa) / 2))
}

/// Every applicable lower bound for `(k, s, t)` in one place.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub k: usize,
    pub s: u32,
    pub t: usize,
    /// `None` for odd `t` with `s > 2`.
    pub rao: Option<u128>,
    pub friedman_bierbrauer: Rational,
    /// Binary only.
    pub khalyavin: Option<Khalyavin>,
    /// `2^(k-1)` when Khalyavin applies.
    pub khalyavin_value: Option<u128>,
    pub lp: Option<LpCertificate>,
    /// Verdict at `N = best_lower` (odd `t` analysed at strength `t - 1`).
    pub verdict: Option<SimplicityVerdict>,
    pub best_lower: u128,
    pub integrality: bool,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct BoundOptions {
    pub lp: bool,
    /// Round `best_lower` up to a multiple of `s^t`.
    pub integrality: bool,
}

pub fn bound_report(k: usize, s: u32, t: usize, opts: BoundOptions) -> Result<BoundReport> {
    if k == 0 || t == 0 || t > k {
        return Err(Error::param(format!("bounds need 1 <= t <= k, got k = {k}, t = {t}")));
    }
    if s < 2 {
        return Err(Error::param(format!("alphabet size {s} is below 2")));
    }
    let mut notes = Vec::new();
    let mut best: u128 = 1;

    let rao = match rao_bound(k, s, t) {
        Ok(m) => {
            best = best.max(m);
            Some(m)
        }
        Err(Error::InvalidParameter(_)) => {
            notes.push("no Rao bound for odd strength with s > 2".into());
            None
        }
        Err(e) => return Err(e),
    };

    let fb = friedman_bierbrauer(k, s, t);
    if fb.is_positive() {
        let ceil = fb.ceil().to_integer();
        if let Ok(v) = u128::try_from(ceil) {
            best = best.max(v);
        }
    }

    let (khalyavin, khalyavin_value) = if s == 2 {
        let kh = khalyavin_criterion(k, t, 0);
        let value = kh.applicable.then(|| 1u128 << (k - 1));
        if let Some(v) = value {
            best = best.max(v);
            notes.push(format!("Khalyavin: t >= (2k-2)/3, so N >= 2^(k-1) = {v}"));
        }
        (Some(kh), value)
    } else {
        (None, None)
    };

    let lp = if opts.lp {
        if s != 2 {
            return Err(Error::param("the LP bound is implemented for s = 2 only"));
        }
        let cert = lp_bound(k, t)?;
        let ceil = cert.optimum.ceil().to_integer();
        best = best.max(u128::try_from(ceil).map_err(|_| Error::Overflow("lp bound"))?);
        Some(cert)
    } else {
        None
    };

    if opts.integrality {
        let step = (s as u128)
            .checked_pow(t as u32)
            .ok_or(Error::Overflow("integrality rounding"))?;
        let rounded = best.div_ceil(step) * step;
        if rounded != best {
            notes.push(format!("integrality: {best} rounded up to a multiple of s^t = {step}"));
        } else {
            notes.push("integrality: already a multiple of s^t".into());
        }
        best = rounded;
    }

    let verdict = {
        let even_t = if t % 2 == 0 { t } else { t - 1 };
        if even_t >= 2 {
            if even_t != t {
                notes.push(format!("verdict taken at strength {even_t}"));
            }
            Some(theorem1_verdict(best, k, s, even_t / 2)?)
        } else {
            None
        }
    };

    Ok(BoundReport {
        k,
        s,
        t,
        rao,
        friedman_bierbrauer: fb,
        khalyavin,
        khalyavin_value,
        lp,
        verdict,
        best_lower: best,
        integrality: opts.integrality,
        notes,
    })
}

/// Wire form of [`BoundReport`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReportJson {
    pub k: usize,
    pub s: u32,
    pub t: usize,
    pub rao: Option<String>,
    pub fb_num: String,
    pub fb_den: String,
    pub khalyavin: Option<KhalyavinJson>,
    pub lp: Option<crate::lp::LpCertificateJson>,
    pub verdict: Option<SimplicityVerdict>,
    pub best_lower: String,
    pub integrality: bool,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KhalyavinJson {
    pub applicable: bool,
    pub value: Option<String>,
}

impl From<&BoundReport> for BoundReportJson {
    fn from(r: &BoundReport) -> Self {
        BoundReportJson {
            k: r.k,
            s: r.s,
            t: r.t,
            rao: r.rao.map(|m| m.to_string()),
            fb_num: r.friedman_bierbrauer.numer().to_string(),
            fb_den: r.friedman_bierbrauer.denom().to_string(),
            khalyavin: r.khalyavin.map(|kh| KhalyavinJson {
                applicable: kh.applicable,
                value: r.khalyavin_value.map(|v| v.to_string()),
            }),
            lp: r.lp.as_ref().map(Into::into),
            verdict: r.verdict.clone(),
            best_lower: r.best_lower.to_string(),
            integrality: r.integrality,
            notes: r.notes.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn rao_values() {
        assert_eq!(rao_bound(5, 2, 4).unwrap(), 16);
        assert_eq!(rao_bound(11, 2, 4).unwrap(), 67);
        assert_eq!(rao_bound(13, 2, 6).unwrap(), 378);
        assert_eq!(rao_bound(15, 2, 4).unwrap(), 121);
        for k in 2..=20 {
            assert_eq!(rao_bound(k, 2, 2).unwrap(), k as u128 + 1);
        }
        // odd strength through doubling
        assert_eq!(rao_bound(5, 2, 3).unwrap(), 10);
        assert_eq!(rao_bound(3, 2, 1).unwrap(), 2);
        assert!(rao_bound(5, 3, 3).is_err());
        assert_eq!(rao_bound(4, 3, 2).unwrap(), 9);
        assert!(rao_bound(3, 2, 4).is_err());
    }

    #[test]
    fn friedman_bierbrauer_values() {
        assert_eq!(friedman_bierbrauer(4, 2, 3), q(8, 1));
        assert_eq!(friedman_bierbrauer(2, 2, 1), q(2, 1));
        assert_eq!(friedman_bierbrauer(5, 2, 4), q(16, 1));
        assert!(friedman_bierbrauer(10, 2, 2).is_negative());
    }

    #[test]
    fn khalyavin_cases() {
        let kh = khalyavin_criterion(7, 4, 64);
        assert!(kh.applicable && kh.simplicity_forced_at_equality);
        assert!(!khalyavin_criterion(7, 2, 8).applicable);
        let kh = khalyavin_criterion(4, 2, 8);
        assert!(kh.applicable && kh.simplicity_forced_at_equality);
        let kh = khalyavin_criterion(4, 2, 16);
        assert!(kh.applicable && !kh.simplicity_forced_at_equality);
    }

    #[test]
    fn verdict_cases() {
        let v = theorem1_verdict(128, 11, 2, 2).unwrap();
        assert_eq!(v.case, SimplicityCase::ForcedSimple);
        assert_eq!(v.rho_max_bound, 1);

        let v = theorem1_verdict(32, 5, 2, 2).unwrap();
        assert_eq!(v.case, SimplicityCase::BoundaryDoubledCase);
        assert_eq!(v.rho_max_bound, 2);

        let v = theorem1_verdict(48, 5, 2, 2).unwrap();
        assert_eq!(v.case, SimplicityCase::NoConclusion);
        assert_eq!(v.rho_max_bound, 3);

        let v = theorem1_verdict(40, 5, 2, 2).unwrap();
        assert_eq!(v.case, SimplicityCase::MultiplicityAtMost2);

        // N = 2M outside the boundary hypotheses
        let v = theorem1_verdict(8, 3, 2, 1).unwrap();
        assert_eq!(v.case, SimplicityCase::MultiplicityAtMost2);

        assert!(theorem1_verdict(16, 5, 2, 0).is_err());
        assert!(theorem1_verdict(16, 5, 2, 3).is_err());
    }

    #[test]
    fn corollary_cases() {
        for k in 2..40u128 {
            assert!(corollary1_applies(k as usize, 2, 2, 2 * k).unwrap());
        }
        assert!(corollary1_applies(15, 2, 4, 128).unwrap());
        assert!(!corollary1_applies(5, 2, 4, 32).unwrap());
        assert!(corollary1_applies(5, 2, 3, 16).is_err());
    }

    #[test]
    fn kerdock_intervals() {
        assert_eq!(kerdock_interval_contains(12), (true, Some(4)));
        assert_eq!(kerdock_interval_contains(15), (true, Some(4)));
        assert_eq!(kerdock_interval_contains(11), (false, None));
        assert_eq!(kerdock_interval_contains(16), (false, None));
        // 2^5.5 = 45.25..
        assert_eq!(kerdock_interval_contains(45), (false, None));
        assert_eq!(kerdock_interval_contains(46), (true, Some(6)));
        assert_eq!(kerdock_interval_contains(63), (true, Some(6)));
    }

    #[test]
    fn ell_weight_pairs() {
        assert_eq!(ell_weights(5), Some((4, 2)));
        assert_eq!(ell_weights(10), Some((7, 4)));
        assert_eq!(ell_weights(6), None);
        for k in 1..500u64 {
            if let Some((l1, l2)) = ell_weights(k) {
                assert_eq!(l1 + l2, k + 1);
                assert_eq!(4 * l1 * l2, k * k + k + 2);
            }
        }
    }

    #[test]
    fn report_for_small_cells() {
        let opts = BoundOptions {
            lp: false,
            integrality: true,
        };
        assert_eq!(bound_report(4, 2, 2, opts).unwrap().best_lower, 8);
        assert_eq!(bound_report(5, 2, 3, opts).unwrap().best_lower, 16);
        let raw = bound_report(5, 2, 2, BoundOptions::default()).unwrap();
        assert_eq!(raw.best_lower, 6);
        assert!(!raw.integrality);
    }
}
