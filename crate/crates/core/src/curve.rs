//! Points of the Fermat curve `u^{q-1} + v^{q-1} + w^{q-1} = 0` in `P²(GF(q^i))`.
//!
//! The parametric enumerators write down every point directly:
//!
//! * `i = 1`: for `p = 3` every point with nonzero coordinates; for `p = 2`
//!   every point with exactly one zero coordinate; nothing otherwise.
//! * `i = 2`: `(c v² : v : 1)` with `v^{q-1}` a primitive cube root of unity
//!   (`q ≡ 2 mod 3`), `(u : v : 1)` over `GF(q)*` (`q ≡ 0 mod 3`), and the
//!   arrangements of `{0, 1, d}` with `d^{q-1} = -1`.
//! * `i = 3`: `(c v^{q+1} : v : 1)` for nonzero roots `v` of
//!   `T(X) = X^{q²} + X^q + X`, `(c v^{-q} : v : 1)` for nonzero roots of
//!   `T(1/X)`, and for even `q` the `GF(q)`-points with one zero coordinate.
//!
//! In every family `c` ranges over `GF(q)*`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::{FieldCtx, FieldElem, PrimePower, TowerCtx};
use crate::points::{power_sum, PointSet, ProjPoint, Provenance};
use crate::scan::{scan_fermat, ScanOptions};

pub type CurvePoints = PointSet<3>;

/// A closed-form point count together with the congruence branch it came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FormulaCount {
    pub value: u128,
    pub case: &'static str,
    /// True for values derived here rather than stated as a closed formula.
    pub derived: bool,
}

fn normalized(f: &FieldCtx, coords: [FieldElem; 3], prov: Provenance) -> ProjPoint<3> {
    ProjPoint::normalize(f, coords, prov).expect("family members are nonzero tuples")
}

/// Whether `(u : v : w)` lies on the curve, by direct evaluation.
pub fn on_curve(t: &TowerCtx, coords: &[FieldElem; 3]) -> bool {
    power_sum(t.top(), coords, t.q() - 1).is_zero()
}

fn one_zero_points(f: &FieldCtx, values: &[FieldElem], prov: Provenance) -> Vec<ProjPoint<3>> {
    let (zero, one) = (f.zero(), f.one());
    values
        .iter()
        .flat_map(|&c| [[zero, one, c], [one, zero, c], [one, c, zero]])
        .map(|coords| normalized(f, coords, prov))
        .collect()
}

/// Points over `GF(q)`.
pub fn enumerate_base(t: &TowerCtx) -> Result<CurvePoints> {
    require_degree(t, 1)?;
    let f = t.top();
    let units = t.subfield_units();
    let points = match t.prime_power().p() {
        3 => units
            .iter()
            .flat_map(|&v| units.iter().map(move |&w| [f.one(), v, w]))
            .map(|coords| normalized(f, coords, Provenance::LCase1))
            .collect(),
        2 => one_zero_points(f, units, Provenance::LCase2),
        _ => Vec::new(),
    };
    Ok(PointSet::from_points(points))
}

/// `{s ∈ GF(q^i)* : s^{q-1} = -1}` by a scan of the units.
pub(crate) fn negation_scan(t: &TowerCtx) -> Vec<FieldElem> {
    let f = t.top();
    let minus_one = f.neg(f.one());
    f.units()
        .filter(|&s| f.pow(s, t.q() - 1) == minus_one)
        .collect()
}

/// Points over `GF(q²)`.
pub fn enumerate_quadratic(t: &TowerCtx) -> Result<CurvePoints> {
    require_degree(t, 2)?;
    let f = t.top();
    let q = t.q();
    let units = t.subfield_units();
    let mut points = Vec::new();

    if q % 3 == 2 {
        let primitive: Vec<FieldElem> = f
            .cube_roots_of_unity()
            .into_iter()
            .filter(|&w| w != f.one())
            .collect();
        for v in f.units() {
            if primitive.contains(&f.pow(v, q - 1)) {
                let v2 = f.mul(v, v);
                for &c in units {
                    points.push(normalized(f, [f.mul(c, v2), v, f.one()], Provenance::T2Case1));
                }
            }
        }
    }

    if q.is_multiple_of(3) {
        for &u in units {
            for &v in units {
                points.push(normalized(f, [u, v, f.one()], Provenance::T2Case2));
            }
        }
    }

    let (zero, one) = (f.zero(), f.one());
    for d in negation_scan(t) {
        for coords in [
            [zero, one, d],
            [zero, d, one],
            [one, zero, d],
            [d, zero, one],
            [one, d, zero],
            [d, one, zero],
        ] {
            points.push(normalized(f, coords, Provenance::T2Case3));
        }
    }

    Ok(PointSet::from_points(points))
}

/// The three families over `GF(q³)`, kept apart so their overlaps can be measured.
#[derive(Debug, Clone)]
pub struct CubicFamilies {
    /// Nonzero roots of `T(X)`, sorted.
    pub t_roots: Vec<FieldElem>,
    /// `(c v^{q+1} : v : 1)` for `v` in `t_roots`.
    pub roots_of_t: CurvePoints,
    /// `(c v^{-q} : v : 1)` for `v` with `T(1/v) = 0`.
    pub roots_of_t_inverse: CurvePoints,
    /// Even `q` only: `GF(q)`-points with exactly one zero coordinate.
    pub zero_coordinate: CurvePoints,
}

pub fn cubic_families(t: &TowerCtx) -> Result<CubicFamilies> {
    require_degree(t, 3)?;
    let f = t.top();
    let q = t.q();
    let units = t.subfield_units();
    let t_roots: Vec<FieldElem> = t.t_kernel()?.into_iter().filter(|x| !x.is_zero()).collect();

    let mut first = Vec::with_capacity(t_roots.len() * units.len());
    let mut second = Vec::with_capacity(t_roots.len() * units.len());
    for &root in &t_roots {
        // family (1) with v = root
        let v = root;
        let vq1 = f.pow(v, q + 1);
        // family (2) with v = 1/root, so v^{-q} = root^q
        let w = f.inv(root)?;
        let root_q = f.pow(root, q);
        for &c in units {
            first.push(normalized(f, [f.mul(c, vq1), v, f.one()], Provenance::T3Case1));
            second.push(normalized(f, [f.mul(c, root_q), w, f.one()], Provenance::T3Case2));
        }
    }

    let third = if q.is_multiple_of(2) {
        one_zero_points(f, units, Provenance::T3Case3)
    } else {
        Vec::new()
    };

    Ok(CubicFamilies {
        t_roots,
        roots_of_t: PointSet::from_points(first),
        roots_of_t_inverse: PointSet::from_points(second),
        zero_coordinate: PointSet::from_points(third),
    })
}

/// Points over `GF(q³)`.
pub fn enumerate_cubic(t: &TowerCtx) -> Result<CurvePoints> {
    let fams = cubic_families(t)?;
    let mut all = Vec::with_capacity(
        fams.roots_of_t.len() + fams.roots_of_t_inverse.len() + fams.zero_coordinate.len(),
    );
    all.extend_from_slice(fams.roots_of_t.as_slice());
    all.extend_from_slice(fams.roots_of_t_inverse.as_slice());
    all.extend_from_slice(fams.zero_coordinate.as_slice());
    Ok(PointSet::from_points(all))
}

/// Overlap between the `T(X)` and `T(1/X)` families over `GF(q³)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubicOverlap {
    /// Nonzero `v` that are roots of both `T(X)` and `T(1/X)`.
    pub shared_v: Vec<FieldElem>,
    pub shared_points: usize,
}

pub fn cubic_overlap(t: &TowerCtx) -> Result<CubicOverlap> {
    let fams = cubic_families(t)?;
    let f = t.top();
    let mut inverse_roots: Vec<FieldElem> = fams
        .t_roots
        .iter()
        .map(|&r| f.inv(r))
        .collect::<Result<_>>()?;
    inverse_roots.sort_unstable();
    let shared_v = fams
        .t_roots
        .iter()
        .copied()
        .filter(|v| inverse_roots.binary_search(v).is_ok())
        .collect();
    Ok(CubicOverlap {
        shared_v,
        shared_points: fams.roots_of_t.intersection_len(&fams.roots_of_t_inverse),
    })
}

/// Number of `v` that are roots of both `T(X)` and `T(1/X)`: those with
/// `v^{q-1}` of order exactly 3 when `q ≡ 1 (mod 3)`, all of `GF(q)*` when
/// `3 | q`, and none otherwise.
pub fn expected_shared_roots(q: u64) -> u64 {
    match q % 3 {
        1 => 2 * (q - 1),
        0 => q - 1,
        _ => 0,
    }
}

/// Dispatches on the tower degree.
pub fn enumerate_parametric(t: &TowerCtx) -> Result<CurvePoints> {
    match t.degree() {
        1 => enumerate_base(t),
        2 => enumerate_quadratic(t),
        3 => enumerate_cubic(t),
        d => Err(Error::WrongTowerDegree { expected: 3, got: d }),
    }
}

/// Brute-force scan of `P²(GF(q^i))`.
pub fn enumerate_brute(t: &TowerCtx, opts: ScanOptions) -> Result<CurvePoints> {
    scan_fermat::<3>(t.top(), t.q() - 1, opts)
}

/// Closed-form point count over `GF(q^i)` for `i ∈ {1, 2, 3}`.
pub fn count_formula(pp: PrimePower, i: u32) -> Result<FormulaCount> {
    let q = pp.q() as u128;
    let m = q - 1;
    let exact = |value, case| FormulaCount {
        value,
        case,
        derived: false,
    };
    Ok(match i {
        1 => {
            let (value, case) = match pp.p() {
                3 => (m * m, "p = 3"),
                2 => (3 * m, "p = 2"),
                _ => (0, "p > 3"),
            };
            FormulaCount {
                value,
                case,
                derived: true,
            }
        }
        2 => match q % 3 {
            1 => exact(3 * m, "q ≡ 1 (mod 3)"),
            0 => exact(3 * m + m * m, "q ≡ 0 (mod 3)"),
            _ => exact(3 * m + 2 * m * m, "q ≡ 2 (mod 3)"),
        },
        3 => {
            if q.is_multiple_of(3) {
                exact((2 * q + 1) * m * m, "q ≡ 0 (mod 3)")
            } else {
                match q % 6 {
                    5 => exact((2 * q + 2) * m * m, "q ≡ 5 (mod 6)"),
                    1 => exact(2 * q * m * m, "q ≡ 1 (mod 6)"),
                    2 => exact((2 * q + 2) * m * m + 3 * m, "q ≡ 2 (mod 6)"),
                    _ => exact(2 * q * m * m + 3 * m, "q ≡ 4 (mod 6)"),
                }
            }
        }
        d => return Err(Error::WrongTowerDegree { expected: 3, got: d }),
    })
}

fn require_degree(t: &TowerCtx, expected: u32) -> Result<()> {
    if t.degree() == expected {
        Ok(())
    } else {
        Err(Error::WrongTowerDegree {
            expected,
            got: t.degree(),
        })
    }
}
