//! Explicit finite fields GF(p^n) in a polynomial basis.
//!
//! An element is stored as its coefficient vector packed into a single
//! integer, `sum_k c_k p^k`, where `c_k` is the coefficient of the `k`-th
//! power of the basis root. Comparing packed integers compares coefficient
//! vectors from the highest index down, which is the canonical element order
//! used throughout the crate; iterating `0..Q` visits every element once,
//! zero first.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::arith::{
    add_mod, checked_pow_below_ceiling, gcd, is_prime, mul_mod, prime_factors, sub_mod,
};
use super::poly;
use crate::error::{Error, Result};

/// Fields up to this order get discrete log/exp tables.
const TABLE_MAX_ORDER: u64 = 1 << 20;

/// A field element. Only meaningful together with the [`FieldCtx`] that made it.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElem(u64);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    /// Position of the element in the canonical order.
    #[inline]
    pub fn index(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Serialized shape of a field: characteristic, degree and the defining
/// polynomial's coefficients (constant term first, leading 1 included).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FieldDescriptor {
    pub p: u64,
    pub n: u32,
    pub polynomial: Vec<u64>,
}

struct LogTables {
    /// `exp[k] = g^k` for `0 <= k < 2(Q-1)`, doubled so sums of logs need no reduction.
    exp: Vec<u32>,
    /// `log[x]` for nonzero `x`; `log[0]` is unused.
    log: Vec<u32>,
}

struct Inner {
    p: u64,
    n: u32,
    order: u64,
    /// Monic defining polynomial, constant term first, length `n + 1`.
    modulus: Vec<u64>,
    tables: Option<LogTables>,
}

/// An immutable finite field context. Cloning is cheap.
#[derive(Clone)]
pub struct FieldCtx {
    inner: Arc<Inner>,
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.inner.p == other.inner.p && self.inner.modulus == other.inner.modulus
    }
}

impl Eq for FieldCtx {}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.inner.p)
            .field("n", &self.inner.n)
            .field("modulus", &self.inner.modulus)
            .finish()
    }
}

/// Lexicographically least monic irreducible polynomial of degree `n` over
/// Z_p: the lower coefficients, read as a packed element, are minimal.
fn least_irreducible(p: u64, n: u32, order: u64) -> Vec<u64> {
    let n = n as usize;
    (0..order)
        .map(|packed| {
            let mut f = unpack(packed, p, n);
            f.push(1);
            f
        })
        .find(|f| (n == 1 || f[0] != 0) && poly::is_irreducible(f, p))
        .expect("an irreducible polynomial of every degree exists")
}

fn unpack(mut x: u64, p: u64, n: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        out.push(x % p);
        x /= p;
    }
    out
}

impl FieldCtx {
    /// Builds GF(p^n) over the least monic irreducible of degree `n`.
    pub fn new(p: u64, n: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if n == 0 {
            return Err(Error::ZeroDegree);
        }
        let order = checked_pow_below_ceiling(p, n).ok_or(Error::CeilingExceeded { p, n })?;
        let modulus = least_irreducible(p, n, order);
        let mut ctx = FieldCtx {
            inner: Arc::new(Inner {
                p,
                n,
                order,
                modulus,
                tables: None,
            }),
        };
        if order <= TABLE_MAX_ORDER {
            let tables = ctx.build_tables();
            Arc::get_mut(&mut ctx.inner)
                .expect("freshly built context is uniquely owned")
                .tables = Some(tables);
        }
        Ok(ctx)
    }

    fn build_tables(&self) -> LogTables {
        let q = self.inner.order as usize;
        let g = self.primitive_element();
        let mut exp = vec![0u32; 2 * (q - 1)];
        let mut log = vec![0u32; q];
        let mut x = FieldElem::ONE;
        for k in 0..q - 1 {
            exp[k] = x.0 as u32;
            exp[k + q - 1] = x.0 as u32;
            log[x.0 as usize] = k as u32;
            x = self.mul_slow(x, g);
        }
        LogTables { exp, log }
    }

    pub fn p(&self) -> u64 {
        self.inner.p
    }

    pub fn degree(&self) -> u32 {
        self.inner.n
    }

    /// Cardinality `Q = p^n`.
    pub fn order(&self) -> u64 {
        self.inner.order
    }

    /// Defining polynomial, constant term first, including the leading 1.
    pub fn modulus(&self) -> &[u64] {
        &self.inner.modulus
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            p: self.inner.p,
            n: self.inner.n,
            polynomial: self.inner.modulus.clone(),
        }
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem::ZERO
    }

    pub fn one(&self) -> FieldElem {
        FieldElem::ONE
    }

    /// The prime-field constant `k mod p`.
    pub fn from_int(&self, k: u64) -> FieldElem {
        FieldElem(k % self.inner.p)
    }

    /// The class of `X` modulo the defining polynomial.
    pub fn basis_root(&self) -> FieldElem {
        if self.inner.n == 1 {
            let p = self.inner.p;
            FieldElem((p - self.inner.modulus[0]) % p)
        } else {
            FieldElem(self.inner.p)
        }
    }

    /// Element at position `index` in the canonical order.
    pub fn elem(&self, index: u64) -> Option<FieldElem> {
        (index < self.inner.order).then_some(FieldElem(index))
    }

    pub fn elem_from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElem> {
        let n = self.inner.n as usize;
        if coeffs.len() != n {
            return Err(Error::CoefficientCount {
                expected: n,
                got: coeffs.len(),
            });
        }
        let p = self.inner.p;
        let mut acc = 0u64;
        for &c in coeffs.iter().rev() {
            if c >= p {
                return Err(Error::CoefficientOutOfRange { coeff: c, p });
            }
            acc = acc * p + c;
        }
        Ok(FieldElem(acc))
    }

    /// Coefficient vector of `x`, constant term first.
    pub fn coeffs(&self, x: FieldElem) -> Vec<u64> {
        unpack(x.0, self.inner.p, self.inner.n as usize)
    }

    /// All elements in canonical order, zero first.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.inner.order).map(FieldElem)
    }

    /// Nonzero elements in canonical order.
    pub fn units(&self) -> impl Iterator<Item = FieldElem> {
        (1..self.inner.order).map(FieldElem)
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let p = self.inner.p;
        if p == 2 {
            return FieldElem(a.0 ^ b.0);
        }
        if self.inner.n == 1 {
            return FieldElem(add_mod(a.0, b.0, p));
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut place = 1u64;
        let mut acc = 0u64;
        while x != 0 || y != 0 {
            acc += add_mod(x % p, y % p, p) * place;
            x /= p;
            y /= p;
            place = place.wrapping_mul(p);
        }
        FieldElem(acc)
    }

    #[inline]
    pub fn neg(&self, a: FieldElem) -> FieldElem {
        let p = self.inner.p;
        if p == 2 {
            return a;
        }
        if self.inner.n == 1 {
            return FieldElem(sub_mod(0, a.0, p));
        }
        let mut x = a.0;
        let mut place = 1u64;
        let mut acc = 0u64;
        while x != 0 {
            acc += sub_mod(0, x % p, p) * place;
            x /= p;
            place = place.wrapping_mul(p);
        }
        FieldElem(acc)
    }

    #[inline]
    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        match &self.inner.tables {
            Some(t) => {
                if a.0 == 0 || b.0 == 0 {
                    FieldElem::ZERO
                } else {
                    let k = t.log[a.0 as usize] as usize + t.log[b.0 as usize] as usize;
                    FieldElem(t.exp[k] as u64)
                }
            }
            None => self.mul_slow(a, b),
        }
    }

    /// Schoolbook product followed by reduction modulo the defining polynomial.
    fn mul_slow(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let p = self.inner.p;
        let n = self.inner.n as usize;
        if n == 1 {
            return FieldElem(mul_mod(a.0, b.0, p));
        }
        let ca = unpack(a.0, p, n);
        let cb = unpack(b.0, p, n);
        let mut prod = vec![0u64; 2 * n - 1];
        for (i, &x) in ca.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in cb.iter().enumerate() {
                prod[i + j] = add_mod(prod[i + j], mul_mod(x, y, p), p);
            }
        }
        let f = &self.inner.modulus;
        for k in (n..2 * n - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            for j in 0..n {
                prod[k - n + j] = sub_mod(prod[k - n + j], mul_mod(c, f[j], p), p);
            }
        }
        let mut acc = 0u64;
        for &c in prod[..n].iter().rev() {
            acc = acc * p + c;
        }
        FieldElem(acc)
    }

    /// `x^e` by square-and-multiply (or a log lookup when tables exist).
    /// `0^0 = 1`.
    pub fn pow(&self, x: FieldElem, e: u64) -> FieldElem {
        if e == 0 {
            return FieldElem::ONE;
        }
        if x.0 == 0 {
            return FieldElem::ZERO;
        }
        if let Some(t) = &self.inner.tables {
            let m = (self.inner.order - 1) as u128;
            let k = (t.log[x.0 as usize] as u128 * (e as u128 % m)) % m;
            return FieldElem(t.exp[k as usize] as u64);
        }
        let mut acc = FieldElem::ONE;
        let mut base = x;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul_slow(base, base);
            }
        }
        acc
    }

    pub fn inv(&self, x: FieldElem) -> Result<FieldElem> {
        if x.0 == 0 {
            return Err(Error::ZeroInverse);
        }
        if let Some(t) = &self.inner.tables {
            let m = (self.inner.order - 1) as usize;
            let k = (m - t.log[x.0 as usize] as usize) % m;
            return Ok(FieldElem(t.exp[k] as u64));
        }
        Ok(self.pow(x, self.inner.order - 2))
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// The absolute Frobenius `x -> x^p`.
    pub fn frobenius(&self, x: FieldElem) -> FieldElem {
        self.pow(x, self.inner.p)
    }

    /// Whether `x = y^n` for some `y` in the field.
    pub fn is_nth_power(&self, x: FieldElem, n: u64) -> Result<bool> {
        if n == 0 {
            return Err(Error::ZeroRootDegree);
        }
        if x.is_zero() {
            return Ok(true);
        }
        let m = self.inner.order - 1;
        let e = m / gcd(n as u128, m as u128) as u64;
        Ok(self.pow(x, e) == FieldElem::ONE)
    }

    /// All `x` with `x^3 = 1`, sorted. Size 3 iff `3 | Q - 1`.
    pub fn cube_roots_of_unity(&self) -> Vec<FieldElem> {
        let m = self.inner.order - 1;
        if !m.is_multiple_of(3) {
            return vec![FieldElem::ONE];
        }
        let omega = self
            .units()
            .map(|y| self.pow(y, m / 3))
            .find(|&z| z != FieldElem::ONE)
            .expect("a non-cube exists when 3 divides Q - 1");
        let mut out = vec![FieldElem::ONE, omega, self.mul(omega, omega)];
        out.sort();
        out
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, x: FieldElem) -> Result<u64> {
        if x.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let mut ord = self.inner.order - 1;
        for l in prime_factors(ord) {
            while ord.is_multiple_of(l) && self.pow(x, ord / l) == FieldElem::ONE {
                ord /= l;
            }
        }
        Ok(ord)
    }

    /// Least generator of the multiplicative group in canonical order.
    pub fn primitive_element(&self) -> FieldElem {
        let m = self.inner.order - 1;
        let factors = prime_factors(m);
        self.units()
            .find(|&g| factors.iter().all(|&l| self.pow(g, m / l) != FieldElem::ONE))
            .expect("the multiplicative group of a finite field is cyclic")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_uses_x() {
        let f = FieldCtx::new(2, 1).unwrap();
        assert_eq!(f.modulus(), &[0, 1]);
        assert_eq!(f.elements().collect::<Vec<_>>(), vec![FieldElem(0), FieldElem(1)]);
    }

    #[test]
    fn least_irreducibles() {
        assert_eq!(FieldCtx::new(2, 3).unwrap().modulus(), &[1, 1, 0, 1]);
        assert_eq!(FieldCtx::new(3, 2).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(FieldCtx::new(2, 2).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(FieldCtx::new(2, 4).unwrap().modulus(), &[1, 1, 0, 0, 1]);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(FieldCtx::new(6, 2).unwrap_err(), Error::NotPrime(6));
        assert_eq!(FieldCtx::new(2, 0).unwrap_err(), Error::ZeroDegree);
        assert!(matches!(
            FieldCtx::new(2, 63),
            Err(Error::CeilingExceeded { .. })
        ));
    }

    #[test]
    fn inverse_of_zero() {
        let f = FieldCtx::new(3, 2).unwrap();
        assert_eq!(f.inv(f.zero()), Err(Error::ZeroInverse));
        assert_eq!(f.is_nth_power(f.one(), 0), Err(Error::ZeroRootDegree));
    }

    #[test]
    fn inverses_in_gf8() {
        let f = FieldCtx::new(2, 3).unwrap();
        for g in f.units() {
            assert_eq!(f.mul(f.inv(g).unwrap(), g), f.one());
        }
    }

    #[test]
    fn lagrange_in_gf9_and_gf4() {
        let f9 = FieldCtx::new(3, 2).unwrap();
        assert!(f9.units().all(|x| f9.pow(x, 8) == f9.one()));
        let f4 = FieldCtx::new(2, 2).unwrap();
        assert!(f4.units().all(|x| f4.pow(x, 3) == f4.one()));
    }

    #[test]
    fn slow_and_table_paths_agree() {
        for (p, n) in [(2, 5), (3, 3), (5, 2), (7, 2), (13, 1)] {
            let f = FieldCtx::new(p, n).unwrap();
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(f.mul(a, b), f.mul_slow(a, b));
                }
            }
        }
    }

    #[test]
    fn large_field_without_tables() {
        // 2^31 - 1 is prime; the table threshold is far below its square.
        let f = FieldCtx::new(2_147_483_647, 2).unwrap();
        assert!(f.inner.tables.is_none());
        let x = f.elem_from_coeffs(&[12345, 678]).unwrap();
        let y = f.inv(x).unwrap();
        assert_eq!(f.mul(x, y), f.one());
        assert_eq!(f.pow(x, f.order() - 1), f.one());
    }

    #[test]
    fn nth_powers_in_gf4_and_gf16() {
        let f4 = FieldCtx::new(2, 2).unwrap();
        assert!(!f4.is_nth_power(f4.primitive_element(), 3).unwrap());
        assert!(f4.is_nth_power(f4.zero(), 3).unwrap());
        let f16 = FieldCtx::new(2, 4).unwrap();
        let g5 = f16.pow(f16.primitive_element(), 5);
        assert!(!f16.is_nth_power(g5, 3).unwrap());
        assert!(f16.is_nth_power(g5, 5).unwrap());
    }

    #[test]
    fn cube_roots() {
        let f4 = FieldCtx::new(2, 2).unwrap();
        assert_eq!(f4.cube_roots_of_unity(), f4.units().collect::<Vec<_>>());
        let f9 = FieldCtx::new(3, 2).unwrap();
        assert_eq!(f9.cube_roots_of_unity(), vec![f9.one()]);
        let f25 = FieldCtx::new(5, 2).unwrap();
        let roots = f25.cube_roots_of_unity();
        let brute: Vec<_> = f25.elements().filter(|&x| f25.pow(x, 3) == f25.one()).collect();
        assert_eq!(roots, brute);
        assert_eq!(roots.len(), 3);
    }

    #[test]
    fn coefficient_round_trip_and_errors() {
        let f = FieldCtx::new(3, 2).unwrap();
        let x = f.elem_from_coeffs(&[2, 1]).unwrap();
        assert_eq!(f.coeffs(x), vec![2, 1]);
        assert_eq!(x.index(), 5);
        assert!(f.elem_from_coeffs(&[3, 0]).is_err());
        assert!(f.elem_from_coeffs(&[1]).is_err());
        assert_eq!(f.basis_root(), f.elem_from_coeffs(&[0, 1]).unwrap());
    }

    #[test]
    fn mult_order_in_gf16() {
        let f = FieldCtx::new(2, 4).unwrap();
        assert_eq!(f.mult_order(f.primitive_element()).unwrap(), 15);
        assert_eq!(f.mult_order(f.one()).unwrap(), 1);
    }
}
