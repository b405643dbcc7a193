//! Projective points, canonical representatives and deduplicated point sets.

use std::cmp::Ordering;
use std::hash::{Hash, Hasher};

use serde::Serialize;

use crate::gf::{FieldCtx, FieldElem};

/// Which parametric family (or the brute-force oracle) produced a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Provenance {
    #[serde(rename = "T3-case1")]
    T3Case1,
    #[serde(rename = "T3-case2")]
    T3Case2,
    #[serde(rename = "T3-case3")]
    T3Case3,
    #[serde(rename = "T2-case1")]
    T2Case1,
    #[serde(rename = "T2-case2")]
    T2Case2,
    #[serde(rename = "T2-case3")]
    T2Case3,
    #[serde(rename = "L-case1")]
    LCase1,
    #[serde(rename = "L-case2")]
    LCase2,
    #[serde(rename = "S-lines")]
    SLines,
    #[serde(rename = "S-cubes")]
    SCubes,
    #[serde(rename = "S-char3")]
    SChar3,
    #[serde(rename = "brute")]
    Brute,
}

/// A point of `P^{N-1}` whose leftmost nonzero coordinate is 1.
///
/// Equality, ordering and hashing look at the coordinates only.
#[derive(Debug, Clone, Copy)]
pub struct ProjPoint<const N: usize> {
    pub coords: [FieldElem; N],
    pub provenance: Provenance,
}

/// A point of the projective plane.
pub type ProjPoint2 = ProjPoint<3>;
/// A point of projective 3-space.
pub type ProjPoint3 = ProjPoint<4>;

impl<const N: usize> PartialEq for ProjPoint<N> {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords
    }
}

impl<const N: usize> Eq for ProjPoint<N> {}

impl<const N: usize> PartialOrd for ProjPoint<N> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<const N: usize> Ord for ProjPoint<N> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coords.cmp(&other.coords)
    }
}

impl<const N: usize> Hash for ProjPoint<N> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coords.hash(state);
    }
}

impl<const N: usize> ProjPoint<N> {
    /// Scales `coords` so the leftmost nonzero entry is 1; `None` for the zero tuple.
    pub fn normalize(f: &FieldCtx, coords: [FieldElem; N], provenance: Provenance) -> Option<Self> {
        let lead = coords.iter().copied().find(|c| !c.is_zero())?;
        let coords = if lead == FieldElem::ONE {
            coords
        } else {
            let inv = f.inv(lead).ok()?;
            coords.map(|c| f.mul(c, inv))
        };
        Some(Self { coords, provenance })
    }

    pub fn zero_count(&self) -> usize {
        self.coords.iter().filter(|c| c.is_zero()).count()
    }

    pub fn record(&self, f: &FieldCtx) -> PointRecord {
        PointRecord {
            coords: self.coords.iter().map(|&c| f.coeffs(c)).collect(),
            provenance: self.provenance,
        }
    }
}

/// One line of the JSON-lines point stream.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PointRecord {
    pub coords: Vec<Vec<u64>>,
    pub provenance: Provenance,
}

/// Tallies of points by how many coordinates vanish.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct ZeroTally {
    #[serde(rename = "two-zero")]
    pub two_zero: u64,
    #[serde(rename = "one-zero")]
    pub one_zero: u64,
    #[serde(rename = "no-zero")]
    pub no_zero: u64,
    /// Points with three or more zero coordinates; none exist on these varieties.
    #[serde(rename = "more-zero", skip_serializing_if = "is_zero")]
    pub more_zero: u64,
}

fn is_zero(x: &u64) -> bool {
    *x == 0
}

impl ZeroTally {
    pub fn total(&self) -> u64 {
        self.two_zero + self.one_zero + self.no_zero + self.more_zero
    }
}

/// A sorted set of canonical representatives.
#[derive(Debug, Clone, Default)]
pub struct PointSet<const N: usize> {
    points: Vec<ProjPoint<N>>,
}

impl<const N: usize> PointSet<N> {
    /// Sorts and deduplicates; among equal points the earliest in `points` is kept,
    /// so the first family to produce a point names its provenance.
    pub fn from_points(mut points: Vec<ProjPoint<N>>) -> Self {
        points.sort();
        points.dedup();
        Self { points }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ProjPoint<N>> {
        self.points.iter()
    }

    pub fn as_slice(&self) -> &[ProjPoint<N>] {
        &self.points
    }

    pub fn contains(&self, coords: &[FieldElem; N]) -> bool {
        self.points
            .binary_search_by(|p| p.coords.cmp(coords))
            .is_ok()
    }

    /// Coordinate-exact set equality.
    pub fn same_points(&self, other: &Self) -> bool {
        self.points.len() == other.points.len()
            && self
                .points
                .iter()
                .zip(&other.points)
                .all(|(a, b)| a.coords == b.coords)
    }

    /// Points of `self` missing from `other`.
    pub fn difference<'a>(&'a self, other: &'a Self) -> impl Iterator<Item = &'a ProjPoint<N>> {
        self.points.iter().filter(move |p| !other.contains(&p.coords))
    }

    pub fn intersection_len(&self, other: &Self) -> usize {
        self.points
            .iter()
            .filter(|p| other.contains(&p.coords))
            .count()
    }

    pub fn zero_tally(&self) -> ZeroTally {
        let mut t = ZeroTally::default();
        for p in &self.points {
            match p.zero_count() {
                0 => t.no_zero += 1,
                1 => t.one_zero += 1,
                2 => t.two_zero += 1,
                _ => t.more_zero += 1,
            }
        }
        t
    }
}

impl<'a, const N: usize> IntoIterator for &'a PointSet<N> {
    type Item = &'a ProjPoint<N>;
    type IntoIter = std::slice::Iter<'a, ProjPoint<N>>;

    fn into_iter(self) -> Self::IntoIter {
        self.points.iter()
    }
}

/// `Σ c_k^e` over the coordinates, evaluated term by term.
pub fn power_sum(f: &FieldCtx, coords: &[FieldElem], e: u64) -> FieldElem {
    coords
        .iter()
        .fold(f.zero(), |acc, &c| f.add(acc, f.pow(c, e)))
}
