//! Dense polynomials over the prime field Z_p, used only while building fields.
//!
//! Coefficients are stored lowest degree first and kept trimmed: the zero
//! polynomial is the empty vector.

use super::arith::{add_mod, inv_mod, mul_mod, sub_mod};

pub(crate) type ZpPoly = Vec<u64>;

pub(crate) fn trim(mut a: ZpPoly) -> ZpPoly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub(crate) fn degree(a: &[u64]) -> Option<usize> {
    a.len().checked_sub(1)
}

pub(crate) fn sub(a: &[u64], b: &[u64], p: u64) -> ZpPoly {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|k| {
            sub_mod(
                a.get(k).copied().unwrap_or(0),
                b.get(k).copied().unwrap_or(0),
                p,
            )
        })
        .collect();
    trim(out)
}

pub(crate) fn mul(a: &[u64], b: &[u64], p: u64) -> ZpPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = add_mod(out[i + j], mul_mod(x, y, p), p);
        }
    }
    trim(out)
}

/// Remainder of `a` modulo a nonzero `m`.
pub(crate) fn rem(a: &[u64], m: &[u64], p: u64) -> ZpPoly {
    let dm = degree(m).expect("division by the zero polynomial");
    let mut r = trim(a.to_vec());
    let lead_inv = inv_mod(m[dm], p);
    while let Some(dr) = degree(&r) {
        if dr < dm {
            break;
        }
        let factor = mul_mod(r[dr], lead_inv, p);
        let shift = dr - dm;
        for (k, &c) in m.iter().enumerate() {
            r[shift + k] = sub_mod(r[shift + k], mul_mod(factor, c, p), p);
        }
        r = trim(r);
    }
    r
}

pub(crate) fn gcd(a: &[u64], b: &[u64], p: u64) -> ZpPoly {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn mul_rem(a: &[u64], b: &[u64], m: &[u64], p: u64) -> ZpPoly {
    rem(&mul(a, b, p), m, p)
}

/// `base^e mod m`.
pub(crate) fn pow_rem(base: &[u64], mut e: u64, m: &[u64], p: u64) -> ZpPoly {
    let mut acc = rem(&[1], m, p);
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_rem(&acc, &b, m, p);
        }
        b = mul_rem(&b, &b, m, p);
        e >>= 1;
    }
    acc
}

/// Ben-Or test: a monic `f` of degree `n` is irreducible iff it shares no
/// factor with `X^{p^d} - X` for every `1 <= d <= n/2`.
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let n = match degree(f) {
        Some(0) | None => return false,
        Some(n) => n,
    };
    if n == 1 {
        return true;
    }
    if f[0] == 0 {
        return false;
    }
    let x: ZpPoly = vec![0, 1];
    let mut frob = rem(&x, f, p);
    for _ in 1..=n / 2 {
        frob = pow_rem(&frob, p, f, p);
        let g = gcd(&sub(&frob, &x, p), f, p);
        if degree(&g) != Some(0) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn irreducibility_small_cases() {
        // X^3 + X + 1 and X^3 + X^2 + 1 over Z_2
        assert!(is_irreducible(&[1, 1, 0, 1], 2));
        assert!(is_irreducible(&[1, 0, 1, 1], 2));
        assert!(!is_irreducible(&[1, 0, 0, 1], 2));
        // X^2 + 1 over Z_3 is irreducible, over Z_5 it is not
        assert!(is_irreducible(&[1, 0, 1], 3));
        assert!(!is_irreducible(&[1, 0, 1], 5));
        // (X^2+X+1)(X^3+X+1) over Z_2 has no roots but is reducible
        let f = mul(&[1, 1, 1], &[1, 1, 0, 1], 2);
        assert!(!is_irreducible(&f, 2));
    }

    #[test]
    fn gcd_and_rem() {
        let p = 7;
        let a = mul(&[1, 1], &[2, 0, 1], p);
        let b = mul(&[1, 1], &[3, 1], p);
        assert_eq!(gcd(&a, &b, p).len(), 2);
        assert!(rem(&a, &[1, 1], p).is_empty());
    }
}
