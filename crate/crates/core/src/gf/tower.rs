//! Subfield pairs GF(q) ⊂ GF(q^i) and the linearized map `T(x) = x^{q²} + x^q + x`.

use super::arith::PrimePower;
use super::field::{FieldCtx, FieldElem};
use super::linalg::{self, Matrix};
use crate::error::{Error, Result};

/// Polynomials over a [`FieldCtx`], lowest degree first, trimmed.
mod upoly {
    use super::{FieldCtx, FieldElem};

    pub type Poly = Vec<FieldElem>;

    pub fn trim(mut a: Poly) -> Poly {
        while a.last().is_some_and(|c| c.is_zero()) {
            a.pop();
        }
        a
    }

    pub fn add(f: &FieldCtx, a: &[FieldElem], b: &[FieldElem]) -> Poly {
        let n = a.len().max(b.len());
        trim(
            (0..n)
                .map(|k| {
                    f.add(
                        a.get(k).copied().unwrap_or_default(),
                        b.get(k).copied().unwrap_or_default(),
                    )
                })
                .collect(),
        )
    }

    pub fn mul(f: &FieldCtx, a: &[FieldElem], b: &[FieldElem]) -> Poly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![FieldElem::ZERO; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(x, y));
            }
        }
        trim(out)
    }

    /// Quotient and remainder by a nonzero divisor.
    pub fn divrem(f: &FieldCtx, a: &[FieldElem], m: &[FieldElem]) -> (Poly, Poly) {
        let dm = m.len() - 1;
        let lead_inv = f.inv(m[dm]).expect("trimmed divisor has a nonzero lead");
        let mut r = trim(a.to_vec());
        let mut quot = vec![FieldElem::ZERO; r.len().saturating_sub(dm)];
        while r.len() > dm {
            let dr = r.len() - 1;
            let factor = f.mul(r[dr], lead_inv);
            let shift = dr - dm;
            quot[shift] = factor;
            for (k, &c) in m.iter().enumerate() {
                r[shift + k] = f.sub(r[shift + k], f.mul(factor, c));
            }
            r = trim(r);
        }
        (trim(quot), r)
    }

    pub fn rem(f: &FieldCtx, a: &[FieldElem], m: &[FieldElem]) -> Poly {
        divrem(f, a, m).1
    }

    pub fn monic(f: &FieldCtx, a: Poly) -> Poly {
        match a.last() {
            None => a,
            Some(&lead) => {
                let inv = f.inv(lead).expect("nonzero lead");
                a.into_iter().map(|c| f.mul(c, inv)).collect()
            }
        }
    }

    pub fn gcd(f: &FieldCtx, a: &[FieldElem], b: &[FieldElem]) -> Poly {
        let mut a = trim(a.to_vec());
        let mut b = trim(b.to_vec());
        while !b.is_empty() {
            let r = rem(f, &a, &b);
            a = b;
            b = r;
        }
        monic(f, a)
    }

    pub fn pow_rem(f: &FieldCtx, base: &[FieldElem], mut e: u64, m: &[FieldElem]) -> Poly {
        let mut acc = rem(f, &[FieldElem::ONE], m);
        let mut b = rem(f, base, m);
        while e > 0 {
            if e & 1 == 1 {
                acc = rem(f, &mul(f, &acc, &b), m);
            }
            b = rem(f, &mul(f, &b, &b), m);
            e >>= 1;
        }
        acc
    }
}

/// All roots of a monic polynomial that splits into distinct linear factors
/// over `f`, by equal-degree splitting. Trial splitters are taken in canonical
/// element order, so the result does not depend on any randomness.
fn split_roots(f: &FieldCtx, poly: &[FieldElem]) -> Result<Vec<FieldElem>> {
    let poly = upoly::monic(f, upoly::trim(poly.to_vec()));
    match poly.len() {
        0 | 1 => return Ok(Vec::new()),
        2 => return Ok(vec![f.neg(poly[0])]),
        _ => {}
    }
    let degree = poly.len() - 1;
    for a in f.units() {
        let splitter = if f.p() == 2 {
            // absolute trace of a·X, reduced modulo poly
            let mut h = upoly::rem(f, &[FieldElem::ZERO, a], &poly);
            let mut acc = h.clone();
            for _ in 1..f.degree() {
                h = upoly::rem(f, &upoly::mul(f, &h, &h), &poly);
                acc = upoly::add(f, &acc, &h);
            }
            acc
        } else {
            let h = upoly::pow_rem(f, &[a, FieldElem::ONE], (f.order() - 1) / 2, &poly);
            upoly::add(f, &h, &[f.neg(f.one())])
        };
        let g = upoly::gcd(f, &splitter, &poly);
        if g.len() > 1 && g.len() < poly.len() {
            let (cofactor, _) = upoly::divrem(f, &poly, &g);
            let mut roots = split_roots(f, &g)?;
            roots.extend(split_roots(f, &cofactor)?);
            return Ok(roots);
        }
    }
    Err(Error::RootFinding(degree))
}

/// GF(q) ⊂ GF(q^i) with an explicit embedding and the relative Frobenius.
#[derive(Clone, Debug)]
pub struct TowerCtx {
    prime_power: PrimePower,
    degree: u32,
    base: FieldCtx,
    top: FieldCtx,
    /// Image in `top` of the `k`-th power of the base field's basis root.
    embed_table: Vec<FieldElem>,
    /// `embed(a)` for every base element `a`, in base canonical order.
    subfield: Vec<FieldElem>,
}

impl TowerCtx {
    /// Builds GF(q) ⊂ GF(q^i). The base basis root is sent to the least root
    /// of its minimal polynomial inside the top field.
    pub fn new(pp: PrimePower, degree: u32) -> Result<Self> {
        if !(1..=4).contains(&degree) {
            return Err(Error::TowerDegreeOutOfRange(degree));
        }
        let (p, r) = (pp.p(), pp.r());
        let base = FieldCtx::new(p, r)?;
        let top = if degree == 1 {
            base.clone()
        } else {
            FieldCtx::new(p, r * degree)?
        };
        let embed_table = if degree == 1 {
            let mut root_power = top.one();
            (0..r)
                .map(|_| {
                    let cur = root_power;
                    root_power = top.mul(root_power, top.basis_root());
                    cur
                })
                .collect()
        } else if r == 1 {
            vec![top.one()]
        } else {
            let min_poly: Vec<FieldElem> =
                base.modulus().iter().map(|&c| top.from_int(c)).collect();
            let alpha = split_roots(&top, &min_poly)?
                .into_iter()
                .min()
                .ok_or(Error::RootFinding(r as usize))?;
            let mut cur = top.one();
            (0..r)
                .map(|_| {
                    let out = cur;
                    cur = top.mul(cur, alpha);
                    out
                })
                .collect()
        };
        let mut tower = TowerCtx {
            prime_power: pp,
            degree,
            base,
            top,
            embed_table,
            subfield: Vec::new(),
        };
        tower.subfield = tower.base.elements().map(|a| tower.embed(a)).collect();
        Ok(tower)
    }

    pub fn prime_power(&self) -> PrimePower {
        self.prime_power
    }

    pub fn q(&self) -> u64 {
        self.prime_power.q()
    }

    /// Extension degree `i` of the top field over GF(q).
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn base(&self) -> &FieldCtx {
        &self.base
    }

    pub fn top(&self) -> &FieldCtx {
        &self.top
    }

    pub fn embed_table(&self) -> &[FieldElem] {
        &self.embed_table
    }

    pub fn embed(&self, a: FieldElem) -> FieldElem {
        let top = &self.top;
        self.base
            .coeffs(a)
            .into_iter()
            .zip(&self.embed_table)
            .fold(top.zero(), |acc, (c, &img)| {
                top.add(acc, top.mul(top.from_int(c), img))
            })
    }

    /// The embedded copy of GF(q), in base canonical order (zero first).
    pub fn subfield(&self) -> &[FieldElem] {
        &self.subfield
    }

    /// Embedded GF(q)*, in base canonical order.
    pub fn subfield_units(&self) -> &[FieldElem] {
        &self.subfield[1..]
    }

    /// The relative Frobenius `x -> x^q` on the top field.
    pub fn frobenius_q(&self, x: FieldElem) -> FieldElem {
        self.top.pow(x, self.q())
    }

    pub fn in_subfield(&self, x: FieldElem) -> bool {
        self.frobenius_q(x) == x
    }

    fn require_degree(&self, expected: u32) -> Result<()> {
        if self.degree == expected {
            Ok(())
        } else {
            Err(Error::WrongTowerDegree {
                expected,
                got: self.degree,
            })
        }
    }

    /// `T(x) = x^{q²} + x^q + x` on GF(q³).
    pub fn t_map(&self, x: FieldElem) -> Result<FieldElem> {
        self.require_degree(3)?;
        let xq = self.frobenius_q(x);
        let xq2 = self.frobenius_q(xq);
        Ok(self.top.add(self.top.add(xq2, xq), x))
    }

    /// The GF(q)-basis `1, θ, θ²` of GF(q³), with θ the least element outside GF(q).
    fn cubic_basis(&self) -> [FieldElem; 3] {
        let theta = self
            .top
            .elements()
            .find(|&x| !self.in_subfield(x))
            .expect("GF(q³) is strictly larger than GF(q)");
        [self.top.one(), theta, self.top.mul(theta, theta)]
    }

    /// Inverse of the conjugate Vandermonde matrix `[σ^j(b_k)]`.
    fn coordinate_matrix(&self, basis: &[FieldElem; 3]) -> Matrix {
        let rows: Matrix = (0..3)
            .map(|j| {
                basis
                    .iter()
                    .map(|&b| (0..j).fold(b, |acc, _| self.frobenius_q(acc)))
                    .collect()
            })
            .collect();
        linalg::invert(&self.top, &rows).expect("conjugates of a generator are distinct")
    }

    fn coordinates_with(&self, coord: &Matrix, y: FieldElem) -> Vec<FieldElem> {
        let y1 = self.frobenius_q(y);
        let y2 = self.frobenius_q(y1);
        linalg::mat_vec(&self.top, coord, &[y, y1, y2])
    }

    /// Coordinates of `y` over GF(q) in the basis `1, θ, θ²`; each entry lies in
    /// the embedded subfield.
    pub fn cubic_coordinates(&self, y: FieldElem) -> Result<[FieldElem; 3]> {
        self.require_degree(3)?;
        let basis = self.cubic_basis();
        let coord = self.coordinate_matrix(&basis);
        let c = self.coordinates_with(&coord, y);
        Ok([c[0], c[1], c[2]])
    }

    /// Kernel of `T` on GF(q³), sorted, via Gaussian elimination on the 3×3
    /// matrix of `T` over GF(q).
    pub fn t_kernel(&self) -> Result<Vec<FieldElem>> {
        self.require_degree(3)?;
        let top = &self.top;
        let basis = self.cubic_basis();
        let coord = self.coordinate_matrix(&basis);
        let columns: Vec<Vec<FieldElem>> = basis
            .iter()
            .map(|&b| Ok(self.coordinates_with(&coord, self.t_map(b)?)))
            .collect::<Result<_>>()?;
        let matrix: Matrix = (0..3)
            .map(|row| columns.iter().map(|col| col[row]).collect())
            .collect();
        let generators: Vec<FieldElem> = linalg::nullspace(top, &matrix)
            .into_iter()
            .map(|v| {
                v.iter()
                    .zip(&basis)
                    .fold(top.zero(), |acc, (&c, &b)| top.add(acc, top.mul(c, b)))
            })
            .collect();
        let mut kernel = vec![top.zero()];
        for g in generators {
            let multiples: Vec<FieldElem> =
                self.subfield.iter().map(|&c| top.mul(c, g)).collect();
            kernel = kernel
                .iter()
                .flat_map(|&k| multiples.iter().map(move |&m| top.add(k, m)))
                .collect();
        }
        kernel.sort_unstable();
        kernel.dedup();
        Ok(kernel)
    }
}
