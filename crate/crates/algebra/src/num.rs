//! Checked scalar helpers shared by the matrix code.

use crate::{Error, Result};

#[inline]
pub fn add(a: i64, b: i64) -> Result<i64> {
    a.checked_add(b).ok_or(Error::ArithmeticOverflow)
}

#[inline]
pub fn sub(a: i64, b: i64) -> Result<i64> {
    a.checked_sub(b).ok_or(Error::ArithmeticOverflow)
}

#[inline]
pub fn mul(a: i64, b: i64) -> Result<i64> {
    a.checked_mul(b).ok_or(Error::ArithmeticOverflow)
}

#[inline]
pub fn neg(a: i64) -> Result<i64> {
    a.checked_neg().ok_or(Error::ArithmeticOverflow)
}

/// `a*b + c`, checked.
#[inline]
pub fn mul_add(a: i64, b: i64, c: i64) -> Result<i64> {
    add(mul(a, b)?, c)
}

/// Non-negative gcd; `gcd(0, 0) = 0`.
pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a as i64
}

pub fn gcd_all(values: &[i64]) -> i64 {
    values.iter().fold(0, |g, &v| gcd(g, v))
}

/// Returns `(g, x, y)` with `a*x + b*y = g = gcd(a, b) >= 0`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1) = (a as i128, b as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (r0, s0, t0) = (-r0, -s0, -t0);
    }
    (r0 as i64, s0 as i64, t0 as i64)
}

/// `C(a, 2) = a(a-1)/2`, extended to negative `a` (so `C(-1, 2) = 1`).
pub fn binom2(a: i64) -> Result<i64> {
    let p = mul(a, sub(a, 1)?)?;
    Ok(p / 2)
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    let (g, x, _) = ext_gcd(a.rem_euclid(m), m);
    (g == 1).then(|| x.rem_euclid(m))
}

/// Combines residues mod 8 and mod 3 into the residue mod 24.
pub fn crt24(r8: i64, r3: i64) -> i64 {
    // 9 ≡ 1 (mod 8), 9 ≡ 0 (mod 3); 16 ≡ 0 (mod 8), 16 ≡ 1 (mod 3)
    (9 * r8.rem_euclid(8) + 16 * r3.rem_euclid(3)).rem_euclid(24)
}
