//! Points of the Fermat surface `u^{q-1} + v^{q-1} + w^{q-1} + x^{q-1} = 0` in
//! `P³(GF(q²))`.
//!
//! Every point lies on one of the lines
//! `{(a : s·a : b : t·b)}` (coordinates permuted by a pairing of the four
//! indices, `s^{q-1} = t^{q-1} = -1`), or has exactly one zero coordinate and
//! then falls in the cube-root family (`q ≡ 2 mod 3`) or the `GF(q)` family
//! (`3 | q`).

use serde::Serialize;

use crate::curve::{negation_scan, FormulaCount};
use crate::error::{Error, Result};
use crate::gf::{FieldCtx, FieldElem, PrimePower, TowerCtx};
use crate::points::{power_sum, PointSet, ProjPoint, Provenance, ZeroTally};
use crate::scan::{scan_fermat, ScanOptions};

pub type SurfacePoints = PointSet<4>;

/// The three ways to split `{0, 1, 2, 3}` into two pairs.
pub const PAIRINGS: [[(usize, usize); 2]; 3] = [
    [(0, 1), (2, 3)],
    [(0, 2), (1, 3)],
    [(0, 3), (1, 2)],
];

/// `{s ∈ GF(q²)* : s^{q-1} = -1}`; always `q - 1` elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NegationSet(Vec<FieldElem>);

impl NegationSet {
    pub fn elements(&self) -> &[FieldElem] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

fn require_quadratic(t: &TowerCtx) -> Result<()> {
    if t.degree() == 2 {
        Ok(())
    } else {
        Err(Error::WrongTowerDegree {
            expected: 2,
            got: t.degree(),
        })
    }
}

pub fn negation_set(t: &TowerCtx) -> Result<NegationSet> {
    require_quadratic(t)?;
    Ok(NegationSet(negation_scan(t)))
}

/// Whether a point lies on the surface, by direct evaluation.
pub fn on_surface(t: &TowerCtx, coords: &[FieldElem; 4]) -> bool {
    power_sum(t.top(), coords, t.q() - 1).is_zero()
}

fn push(f: &FieldCtx, out: &mut Vec<ProjPoint<4>>, coords: [FieldElem; 4], prov: Provenance) {
    out.push(ProjPoint::normalize(f, coords, prov).expect("family members are nonzero tuples"));
}

/// Points on the line `(a : s·a : b : t·b)` for one pairing, over all `(a : b) ∈ P¹`.
pub fn line_points(
    f: &FieldCtx,
    pairing: [(usize, usize); 2],
    s: FieldElem,
    t: FieldElem,
) -> Vec<ProjPoint<4>> {
    let [(i1, i2), (j1, j2)] = pairing;
    let place = |a: FieldElem, b: FieldElem| {
        let mut c = [FieldElem::ZERO; 4];
        c[i1] = a;
        c[i2] = f.mul(s, a);
        c[j1] = b;
        c[j2] = f.mul(t, b);
        c
    };
    let mut out = Vec::with_capacity(f.order() as usize + 1);
    push(f, &mut out, place(f.zero(), f.one()), Provenance::SLines);
    for b in f.elements() {
        push(f, &mut out, place(f.one(), b), Provenance::SLines);
    }
    out
}

/// Points with exactly one zero coordinate whose other entries are drawn one
/// from each class, in every arrangement.
fn one_zero_arrangements(
    f: &FieldCtx,
    classes: [&[FieldElem]; 3],
    prov: Provenance,
    out: &mut Vec<ProjPoint<4>>,
) {
    const ORDERS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    for zero_pos in 0..4 {
        let slots: Vec<usize> = (0..4).filter(|&k| k != zero_pos).collect();
        for order in ORDERS {
            for &a in classes[order[0]] {
                for &b in classes[order[1]] {
                    for &c in classes[order[2]] {
                        let mut coords = [FieldElem::ZERO; 4];
                        coords[slots[0]] = a;
                        coords[slots[1]] = b;
                        coords[slots[2]] = c;
                        push(f, out, coords, prov);
                    }
                }
            }
        }
    }
}

/// Parametric enumeration of the surface over `GF(q²)`.
pub fn enumerate_surface(t: &TowerCtx) -> Result<SurfacePoints> {
    let neg = negation_set(t)?;
    let f = t.top();
    let q = t.q();
    let mut points = Vec::new();

    for pairing in PAIRINGS {
        for &s in neg.elements() {
            for &u in neg.elements() {
                points.extend(line_points(f, pairing, s, u));
            }
        }
    }

    if q % 3 == 2 {
        // classes of GF(q²)* by the value of x^{q-1}, one per cube root of unity
        let roots = f.cube_roots_of_unity();
        let mut classes: [Vec<FieldElem>; 3] = Default::default();
        for x in f.units() {
            let y = f.pow(x, q - 1);
            if let Some(k) = roots.iter().position(|&r| r == y) {
                classes[k].push(x);
            }
        }
        one_zero_arrangements(
            f,
            [&classes[0], &classes[1], &classes[2]],
            Provenance::SCubes,
            &mut points,
        );
    }

    if q.is_multiple_of(3) {
        // leading coordinate fixed to 1 covers each projective class once
        let units = t.subfield_units();
        for zero_pos in 0..4 {
            let slots: Vec<usize> = (0..4).filter(|&k| k != zero_pos).collect();
            for &b in units {
                for &c in units {
                    let mut coords = [FieldElem::ZERO; 4];
                    coords[slots[0]] = f.one();
                    coords[slots[1]] = b;
                    coords[slots[2]] = c;
                    push(f, &mut points, coords, Provenance::SChar3);
                }
            }
        }
    }

    Ok(PointSet::from_points(points))
}

/// Brute-force scan of `P³(GF(q²))`.
pub fn enumerate_surface_brute(t: &TowerCtx, opts: ScanOptions) -> Result<SurfacePoints> {
    require_quadratic(t)?;
    scan_fermat::<4>(t.top(), t.q() - 1, opts)
}

/// Closed-form point count of the surface over `GF(q²)`.
pub fn surface_count_formula(pp: PrimePower) -> FormulaCount {
    let q = pp.q() as u128;
    let m = q - 1;
    let (m2, m3, m4) = (m * m, m * m * m, m * m * m * m);
    let (value, case) = if q.is_multiple_of(3) {
        (3 * m4 + 3 * m3 + 4 * m2 + 6 * m, "q ≡ 0 (mod 3)")
    } else {
        match q % 6 {
            1 => (3 * m4 + 3 * m3 + 6 * m, "q ≡ 1 (mod 6)"),
            5 => (3 * m4 + 3 * m3 + 8 * m2 + 6 * m, "q ≡ 5 (mod 6)"),
            4 => ((3 * q + 1) * m3 + 6 * m, "q ≡ 4 (mod 6)"),
            _ => ((3 * q + 1) * m3 + 8 * m2 + 6 * m, "q ≡ 2 (mod 6)"),
        }
    };
    FormulaCount {
        value,
        case,
        derived: false,
    }
}

/// Expected tallies by zero pattern: `6(q-1)` points with two zeros, and
/// `8(q-1)²`, `0` or `4(q-1)²` points with one zero for `q ≡ 2, 1, 0 (mod 3)`.
/// The all-nonzero tally is whatever remains of the closed-form total.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ExpectedPattern {
    #[serde(rename = "two-zero")]
    pub two_zero: u128,
    #[serde(rename = "one-zero")]
    pub one_zero: u128,
    #[serde(rename = "no-zero")]
    pub no_zero: u128,
}

pub fn expected_zero_pattern(pp: PrimePower) -> ExpectedPattern {
    let q = pp.q() as u128;
    let m = q - 1;
    let two_zero = 6 * m;
    let one_zero = match q % 3 {
        2 => 8 * m * m,
        1 => 0,
        _ => 4 * m * m,
    };
    let no_zero = surface_count_formula(pp).value - two_zero - one_zero;
    ExpectedPattern {
        two_zero,
        one_zero,
        no_zero,
    }
}

impl ExpectedPattern {
    pub fn matches(&self, tally: &ZeroTally) -> bool {
        tally.more_zero == 0
            && tally.two_zero as u128 == self.two_zero
            && tally.one_zero as u128 == self.one_zero
            && tally.no_zero as u128 == self.no_zero
    }
}
