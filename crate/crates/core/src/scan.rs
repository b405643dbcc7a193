//! Exhaustive scan of projective space for zeros of `Σ x_k^e`.
//!
//! This is the brute-force oracle: it knows nothing about the parametric
//! families and evaluates the defining equation on every canonical
//! representative.

use std::ops::Range;
use std::thread;

use crate::error::{Error, Result};
use crate::gf::{FieldCtx, FieldElem};
use crate::points::{PointSet, ProjPoint, Provenance};

/// Default ceiling on the number of projective representatives a brute scan may visit.
pub const DEFAULT_BUDGET: u64 = 1 << 25;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanOptions {
    pub budget: u64,
    pub workers: usize,
}

impl Default for ScanOptions {
    fn default() -> Self {
        Self {
            budget: DEFAULT_BUDGET,
            workers: 1,
        }
    }
}

impl ScanOptions {
    pub fn with_budget(budget: u64) -> Self {
        Self {
            budget,
            ..Self::default()
        }
    }
}

/// `|P^{n-1}(GF(Q))| = 1 + Q + … + Q^{n-1}`, saturating.
pub fn representative_count(order: u64, n: usize) -> u128 {
    let q = order as u128;
    let mut total: u128 = 0;
    let mut term: u128 = 1;
    for _ in 0..n {
        total = total.saturating_add(term);
        term = term.saturating_mul(q);
    }
    total
}

/// Refuses scans whose representative count exceeds `budget`.
pub fn check_budget(order: u64, n: usize, budget: u64) -> Result<u128> {
    let reps = representative_count(order, n);
    if reps > budget as u128 {
        Err(Error::BudgetExceeded {
            representatives: reps,
            budget,
        })
    } else {
        Ok(reps)
    }
}

struct Scanner<'a, const N: usize> {
    field: &'a FieldCtx,
    powers: &'a [FieldElem],
    order: u64,
}

impl<const N: usize> Scanner<'_, N> {
    fn walk(
        &self,
        coords: &mut [FieldElem; N],
        pos: usize,
        acc: FieldElem,
        first: &Range<u64>,
        lead: usize,
        out: &mut Vec<ProjPoint<N>>,
    ) {
        if pos == N {
            if acc.is_zero() {
                out.push(ProjPoint {
                    coords: *coords,
                    provenance: Provenance::Brute,
                });
            }
            return;
        }
        let range = if pos == lead + 1 {
            first.clone()
        } else {
            0..self.order
        };
        for idx in range {
            let x = self.field.elem(idx).expect("index below field order");
            coords[pos] = x;
            let next = self.field.add(acc, self.powers[idx as usize]);
            self.walk(coords, pos + 1, next, first, lead, out);
        }
    }

    /// Representatives whose leading 1 sits at `lead`, with the first free
    /// coordinate restricted to `first`.
    fn block(&self, lead: usize, first: Range<u64>) -> Vec<ProjPoint<N>> {
        let mut coords = [FieldElem::ZERO; N];
        coords[lead] = FieldElem::ONE;
        let mut out = Vec::new();
        let acc = self.powers[1];
        self.walk(&mut coords, lead + 1, acc, &first, lead, &mut out);
        out
    }
}

/// All points of `P^{N-1}(field)` with `Σ x_k^exponent = 0`. Zero coordinates
/// contribute nothing to the sum, so `exponent` must be at least 1.
pub fn scan_fermat<const N: usize>(
    field: &FieldCtx,
    exponent: u64,
    opts: ScanOptions,
) -> Result<PointSet<N>> {
    assert!(exponent >= 1, "exponent must be positive");
    check_budget(field.order(), N, opts.budget)?;
    let powers: Vec<FieldElem> = field.elements().map(|x| field.pow(x, exponent)).collect();
    let order = field.order();
    let scanner = Scanner::<N> {
        field,
        powers: &powers,
        order,
    };
    let workers = opts.workers.max(1) as u64;
    let mut found = Vec::new();
    for lead in 0..N {
        if lead + 1 == N {
            found.extend(scanner.block(lead, 0..0));
            continue;
        }
        if workers == 1 {
            found.extend(scanner.block(lead, 0..order));
            continue;
        }
        let chunk = order.div_ceil(workers);
        let parts: Vec<Vec<ProjPoint<N>>> = thread::scope(|s| {
            let handles: Vec<_> = (0..workers)
                .map(|w| {
                    let start = (w * chunk).min(order);
                    let end = ((w + 1) * chunk).min(order);
                    let scanner = &scanner;
                    s.spawn(move || scanner.block(lead, start..end))
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("scan worker panicked"))
                .collect()
        });
        found.extend(parts.into_iter().flatten());
    }
    Ok(PointSet::from_points(found))
}
