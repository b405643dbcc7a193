//! Count reports: closed form vs parametric enumeration vs brute force.

use serde::Serialize;

use crate::curve;
use crate::error::{Error, Result};
use crate::gf::{FieldDescriptor, TowerCtx};
use crate::points::ZeroTally;
use crate::scan::{check_budget, ScanOptions};
use crate::surface;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Object {
    Curve,
    Surface,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Parametric,
    Brute,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub object: Object,
    pub q: u64,
    pub ext: u32,
    pub field: FieldDescriptor,
    pub formula: u128,
    pub formula_case: &'static str,
    /// Set for the `i = 1` curve count, which is summed from the family sizes.
    pub formula_derived: bool,
    pub parametric: Option<u64>,
    pub brute: Option<u64>,
    /// Why the brute-force count is absent, when it is.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub brute_skipped: Option<String>,
    pub total: u64,
    pub by_zero_pattern: ZeroTally,
    pub formula_match: bool,
    /// Parametric and brute-force sets agree coordinate-exactly; absent
    /// unless both were computed.
    pub oracle_match: Option<bool>,
}

fn object_degree_check(object: Object, t: &TowerCtx) -> Result<()> {
    match (object, t.degree()) {
        (Object::Surface, 2) | (Object::Curve, 1..=3) => Ok(()),
        (Object::Surface, got) => Err(Error::WrongTowerDegree { expected: 2, got }),
        (Object::Curve, got) => Err(Error::WrongTowerDegree { expected: 3, got }),
    }
}

/// Counts points on `object` over the top field of `t`.
///
/// With [`Method::Parametric`] the brute-force scan also runs when it fits in
/// the budget and is otherwise recorded as skipped. With [`Method::Brute`]
/// only the scan runs and an over-budget request is an error.
pub fn count_report(
    t: &TowerCtx,
    object: Object,
    method: Method,
    opts: ScanOptions,
) -> Result<CountReport> {
    object_degree_check(object, t)?;
    let coords = match object {
        Object::Curve => 3,
        Object::Surface => 4,
    };
    let budget = check_budget(t.top().order(), coords, opts.budget);
    let run_brute = match (method, &budget) {
        (Method::Brute, Err(e)) => return Err(e.clone()),
        (_, Ok(_)) => true,
        (Method::Parametric, Err(_)) => false,
    };
    let brute_skipped = budget.err().map(|e| e.to_string());

    let formula = match object {
        Object::Curve => curve::count_formula(t.prime_power(), t.degree())?,
        Object::Surface => surface::surface_count_formula(t.prime_power()),
    };

    let (parametric, brute, tally, oracle_match) = match object {
        Object::Curve => {
            let par = (method == Method::Parametric)
                .then(|| curve::enumerate_parametric(t))
                .transpose()?;
            let bru = run_brute.then(|| curve::enumerate_brute(t, opts)).transpose()?;
            let tally = par.as_ref().or(bru.as_ref()).map(|s| s.zero_tally());
            let matched = par.as_ref().zip(bru.as_ref()).map(|(a, b)| a.same_points(b));
            (par.map(|s| s.len() as u64), bru.map(|s| s.len() as u64), tally, matched)
        }
        Object::Surface => {
            let par = (method == Method::Parametric)
                .then(|| surface::enumerate_surface(t))
                .transpose()?;
            let bru = run_brute
                .then(|| surface::enumerate_surface_brute(t, opts))
                .transpose()?;
            let tally = par.as_ref().or(bru.as_ref()).map(|s| s.zero_tally());
            let matched = par.as_ref().zip(bru.as_ref()).map(|(a, b)| a.same_points(b));
            (par.map(|s| s.len() as u64), bru.map(|s| s.len() as u64), tally, matched)
        }
    };
    let by_zero_pattern = tally.unwrap_or_default();
    let total = by_zero_pattern.total();
    let formula_match = [parametric, brute]
        .iter()
        .flatten()
        .all(|&n| n as u128 == formula.value);

    Ok(CountReport {
        object,
        q: t.q(),
        ext: t.degree(),
        field: t.top().descriptor(),
        formula: formula.value,
        formula_case: formula.case,
        formula_derived: formula.derived,
        parametric,
        brute,
        brute_skipped,
        total,
        by_zero_pattern,
        formula_match,
        oracle_match,
    })
}
