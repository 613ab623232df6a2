//! Kerdock codes as Gray images of quaternary codes.
//!
//! The binary Kerdock code of length `2^m` (`m` even) is the Gray image of a
//! `Z4`-linear code of length `2^(m-1)`. For `m = 4` this is the
//! Nordstrom-Robinson code, the image of the octacode. Its codewords form a
//! simple `OA(4^m, 2^m, 2, 5)`.

use super::{has_strength, post_verify_simple, require};
use crate::array::{distance_distribution, SymbolArray};
use crate::error::{Error, Result};

/// Gray map `Z4 -> F2^2`: `0 -> 00, 1 -> 01, 2 -> 11, 3 -> 10`.
fn gray(x: u8) -> [u8; 2] {
    match x & 3 {
        0 => [0, 0],
        1 => [0, 1],
        2 => [1, 1],
        _ => [1, 0],
    }
}

fn gray_image(words: impl IntoIterator<Item = Vec<u8>>, len: usize) -> Result<SymbolArray> {
    let mut data = Vec::new();
    for w in words {
        for x in w {
            data.extend_from_slice(&gray(x));
        }
    }
    SymbolArray::from_flat(2 * len, 2, data).map(|a| a.sorted())
}

/// Generator matrix of the octacode over `Z4`.
const OCTACODE: [[u8; 8]; 4] = [
    [1, 0, 0, 0, 3, 1, 2, 1],
    [0, 1, 0, 0, 1, 2, 3, 1],
    [0, 0, 1, 0, 3, 3, 3, 2],
    [0, 0, 0, 1, 2, 3, 1, 1],
];

/// The 256 words of the octacode, a self-dual `Z4` code of length 8.
pub fn octacode() -> Vec<Vec<u8>> {
    (0u32..256)
        .map(|msg| {
            let coef: Vec<u8> = (0..4).map(|i| ((msg >> (2 * i)) & 3) as u8).collect();
            (0..8)
                .map(|j| (0..4).map(|i| coef[i] * OCTACODE[i][j]).sum::<u8>() % 4)
                .collect()
        })
        .collect()
}

/// Minimum distance between distinct rows of a binary array.
fn min_distance(a: &SymbolArray) -> Result<usize> {
    let d = distance_distribution(a)?;
    Ok(d.iter().skip(1).position(|&c| c != 0).map_or(a.num_cols() + 1, |i| i + 1))
}

fn verify_kerdock(a: &SymbolArray, m: u32) -> Result<()> {
    let n = 1usize << m;
    require(
        a.num_rows() == 1 << (2 * m) && a.num_cols() == n,
        &format!("Kerdock code has 4^{m} words of length 2^{m}"),
    )?;
    post_verify_simple(a)?;
    require(has_strength(a, 5)?, "Kerdock array has strength 5")?;
    require(!has_strength(a, 6)?, "Kerdock array has strength exactly 5")?;
    let dmin = (1usize << (m - 1)) - (1usize << ((m - 2) / 2));
    require(
        min_distance(a)? == dmin,
        &format!("Kerdock code has minimum distance {dmin}"),
    )
}

/// The Nordstrom-Robinson code as a simple `OA(256, 16, 2, 5)`, built as the
/// Gray image of the octacode.
pub fn nordstrom_robinson() -> Result<SymbolArray> {
    let a = gray_image(octacode(), 8)?;
    verify_kerdock(&a, 4)?;
    Ok(a)
}

/// Primitive binary polynomials, lowest degree first.
fn primitive_polynomial(degree: u32) -> Option<Vec<u8>> {
    match degree {
        3 => Some(vec![1, 1, 0, 1]),
        5 => Some(vec![1, 0, 1, 0, 0, 1]),
        _ => None,
    }
}

fn poly_mul_z4(a: &[u8], b: &[u8]) -> Vec<u8> {
    let mut out = vec![0u8; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % 4;
        }
    }
    out
}

/// Hensel lift of a binary polynomial to a monic `Z4` polynomial dividing
/// `x^(2^r - 1) - 1`, via Graeffe's root-squaring: `h(x^2) = +-(e(x)^2 - o(x)^2)`.
fn hensel_lift(h2: &[u8]) -> Vec<u8> {
    let even: Vec<u8> = h2.iter().enumerate().map(|(i, &c)| if i % 2 == 0 { c } else { 0 }).collect();
    let odd: Vec<u8> = h2.iter().enumerate().map(|(i, &c)| if i % 2 == 1 { c } else { 0 }).collect();
    let e2 = poly_mul_z4(&even, &even);
    let o2 = poly_mul_z4(&odd, &odd);
    let diff: Vec<u8> = e2.iter().zip(&o2).map(|(&x, &y)| (x + 4 - y) % 4).collect();
    let mut h: Vec<u8> = diff.iter().step_by(2).copied().collect();
    if h.last() == Some(&3) {
        h.iter_mut().for_each(|c| *c = (4 - *c) % 4);
    }
    h
}

/// Quotient of monic division over `Z4`; `None` if the remainder is nonzero.
fn divide_z4(num: &[u8], den: &[u8]) -> Option<Vec<u8>> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut q = vec![0u8; num.len() - dd];
    for i in (0..q.len()).rev() {
        let c = rem[i + dd];
        q[i] = c;
        for (j, &y) in den.iter().enumerate() {
            rem[i + j] = (rem[i + j] + 4 * 4 - c * y) % 4;
        }
    }
    rem.iter().all(|&c| c == 0).then_some(q)
}

/// The binary Kerdock code of length `2^m` for `m` in `{4, 6}`.
///
/// Built as the Gray image of the extended cyclic `Z4` code of length
/// `2^(m-1)` generated by `(x^n - 1) / ((x - 1) h(x))`, where `h` is the Hensel
/// lift of a primitive polynomial of degree `m - 1`. For `m = 4` the result
/// is a Nordstrom-Robinson code, equivalent but not equal coordinatewise to
/// [`nordstrom_robinson`].
pub fn kerdock(m: u32) -> Result<SymbolArray> {
    if m % 2 != 0 || m < 4 {
        return Err(Error::param(format!("Kerdock codes need even m >= 4, got {m}")));
    }
    let r = m - 1;
    let h2 = primitive_polynomial(r)
        .ok_or_else(|| Error::param(format!("Kerdock code for m = {m} is not supported")))?;
    let h = hensel_lift(&h2);
    let n = (1usize << r) - 1;
    let mut xn1 = vec![0u8; n + 1];
    xn1[0] = 3;
    xn1[n] = 1;
    let g = divide_z4(&xn1, &poly_mul_z4(&[3, 1], &h))
        .ok_or_else(|| Error::Verification("Hensel lift does not divide x^n - 1".into()))?;

    // Messages are r + 1 quaternary digits; deg(x^i g) <= n - 1 for i <= r.
    let dim = r as usize + 1;
    let words = (0u64..1 << (2 * dim)).map(|msg| {
        let mut w = vec![0u8; n + 1];
        for i in 0..dim {
            let a = ((msg >> (2 * i)) & 3) as u8;
            if a == 0 {
                continue;
            }
            for (j, &c) in g.iter().enumerate() {
                w[i + j] = (w[i + j] + a * c) % 4;
            }
        }
        let sum: u32 = w[..n].iter().map(|&x| x as u32).sum();
        w[n] = ((4 - sum % 4) % 4) as u8;
        w
    });
    let a = gray_image(words, n + 1)?;
    verify_kerdock(&a, m)?;
    Ok(a)
}
