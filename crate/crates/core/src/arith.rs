//! Integer helpers shared by the finite ring code.

use crate::error::{Error, Result};

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `p^n`, rejecting anything above 2^63.
pub fn checked_prime_power(p: u64, n: u32) -> Result<u64> {
    let mut acc: u64 = 1;
    for _ in 0..n {
        acc = acc
            .checked_mul(p)
            .filter(|v| *v <= 1u64 << 63)
            .ok_or(Error::ModulusTooLarge { p, n })?;
    }
    Ok(acc)
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

#[inline]
pub fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % m as u128) as u64
}

#[inline]
pub fn sub_mod(a: u64, b: u64, m: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        m - (b - a)
    }
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// p-adic valuation of `x` in Z/p^n, with v(0) = n.
pub fn valuation_mod(x: u64, p: u64, n: u32) -> u32 {
    if x == 0 {
        return n;
    }
    let mut v = 0;
    let mut y = x;
    while y.is_multiple_of(p) && v < n {
        y /= p;
        v += 1;
    }
    v
}

/// Reduce a signed integer into `[0, m)`.
pub fn reduce_i128(x: i128, m: u64) -> u64 {
    x.rem_euclid(m as i128) as u64
}
