//! Integer helpers: modular arithmetic on `u64`, primality, prime powers.

use serde::Serialize;

use crate::error::{Error, Result};

/// Every field order handled by this crate stays strictly below 2^63.
pub const ORDER_CEILING: u64 = 1 << 63;

#[inline]
pub(crate) fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub(crate) fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

/// Inverse modulo a prime via Fermat's little theorem.
pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) || n.is_multiple_of(3) {
        return false;
    }
    let mut d = 5u64;
    while d.checked_mul(d).is_some_and(|sq| sq <= n) {
        if n.is_multiple_of(d) || n.is_multiple_of(d + 2) {
            return false;
        }
        d += 6;
    }
    true
}

/// Distinct prime factors of `n`, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.checked_mul(d).is_some_and(|sq| sq <= n) {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `p^e`, or `None` once the result reaches the 63-bit ceiling.
pub fn checked_pow_below_ceiling(p: u64, e: u32) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..e {
        acc = acc.checked_mul(p)?;
        if acc >= ORDER_CEILING {
            return None;
        }
    }
    Some(acc)
}

pub fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// `gcd(q^2 - 2q + 1, q^3 - 1)` by the Euclidean algorithm.
///
/// This is `3(q-1)` when `q ≡ 1 (mod 3)` and `q-1` otherwise; it bounds the
/// order of any `v` that is simultaneously a root of `T(X)` and `T(1/X)`.
pub fn gcd_helper(q: u64) -> u64 {
    let q = q as u128;
    let a = q * q - 2 * q + 1;
    let b = q * q * q - 1;
    gcd(a, b) as u64
}

/// A prime power `q = p^r` with `p^{3r}` below the 63-bit ceiling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct PrimePower {
    p: u64,
    r: u32,
    q: u64,
}

impl PrimePower {
    pub fn from_parts(p: u64, r: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if r == 0 {
            return Err(Error::ZeroDegree);
        }
        let q = checked_pow_below_ceiling(p, r).ok_or(Error::CeilingExceeded { p, n: r })?;
        let n3 = r.checked_mul(3).ok_or(Error::CeilingExceeded { p, n: r })?;
        checked_pow_below_ceiling(p, n3).ok_or(Error::CeilingExceeded { p, n: n3 })?;
        Ok(Self { p, r, q })
    }

    /// Factor `q` as `p^r`.
    pub fn new(q: u64) -> Result<Self> {
        if q < 2 {
            return Err(Error::NotPrimePower(q));
        }
        let factors = prime_factors(q);
        if factors.len() != 1 {
            return Err(Error::NotPrimePower(q));
        }
        let p = factors[0];
        let mut r = 0;
        let mut m = q;
        while m > 1 {
            m /= p;
            r += 1;
        }
        Self::from_parts(p, r)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn q(&self) -> u64 {
        self.q
    }
}

/// Prime powers `2 <= q <= limit` in increasing order.
pub fn prime_powers_up_to(limit: u64) -> Vec<PrimePower> {
    (2..=limit).filter_map(|q| PrimePower::new(q).ok()).collect()
}
