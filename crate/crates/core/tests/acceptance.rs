//! Acceptance suite: one PASS/FAIL line per criterion.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{
    axioms_exhaustive, axioms_sampled, fields_up_to, freshman_exhaustive, frobenius_fixed_count, par_failures, pp,
    tower,
};
use fermat_core::curve::{self, count_formula};
use fermat_core::gf::{gcd_helper, prime_powers_up_to, FieldCtx, PrimePower, TowerCtx};
use fermat_core::scan::{check_budget, ScanOptions, DEFAULT_BUDGET};
use fermat_core::surface::{self, expected_zero_pattern, surface_count_formula};
use fermat_core::verify::{self, VerifyReport};
use fermat_core::Error;

const CURVE_ORACLE_QS: [u64; 10] = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16];
const SURFACE_QS: [u64; 6] = [2, 3, 4, 5, 7, 9];

type Criterion = (&'static str, fn() -> Vec<String>);

fn report_failure(r: VerifyReport) -> Option<String> {
    (r.violation_count > 0).then(|| {
        format!("q={} ext={} {}: {} violations", r.q, r.ext, r.check, r.violation_count)
    })
}

fn towers(qs: impl IntoIterator<Item = u64>, exts: &[u32]) -> Vec<TowerCtx> {
    qs.into_iter()
        .flat_map(|q| exts.iter().map(move |&i| tower(q, i)))
        .collect()
}

fn prime_power_qs(max: u64) -> Vec<u64> {
    prime_powers_up_to(max).into_iter().map(|pp| pp.q()).collect()
}

fn curve_oracle() -> Vec<String> {
    par_failures(&towers(CURVE_ORACLE_QS, &[1, 2, 3]), |t| {
        report_failure(verify::check_curve_oracle(t, ScanOptions::default()).unwrap())
    })
}

fn curve_counts() -> Vec<String> {
    let mut failures = par_failures(&towers(prime_power_qs(64), &[1, 2, 3]), |t| {
        let n = curve::enumerate_parametric(t).unwrap().len() as u128;
        let formula = count_formula(t.prime_power(), t.degree()).unwrap().value;
        (n != formula).then(|| format!("q={} i={}: {n} points, formula {formula}", t.q(), t.degree()))
    });
    for (q, i, expected) in [(2, 2, 5u128), (3, 3, 28), (4, 3, 81)] {
        let n = curve::enumerate_parametric(&tower(q, i)).unwrap().len() as u128;
        let formula = count_formula(pp(q), i).unwrap().value;
        if n != expected || formula != expected {
            failures.push(format!("q={q} i={i}: {n} points, formula {formula}, expected {expected}"));
        }
    }
    failures
}

fn surface_oracle() -> Vec<String> {
    let expected_totals = [(2, 21u128), (3, 100), (4, 369), (5, 1112), (7, 4572)];
    par_failures(&towers(SURFACE_QS, &[2]), |t| {
        let brute = surface::enumerate_surface_brute(t, ScanOptions::default()).unwrap();
        let par = surface::enumerate_surface(t).unwrap();
        let formula = surface_count_formula(t.prime_power()).value;
        let mut problems = Vec::new();
        if !par.same_points(&brute) {
            problems.push("parametric and brute sets differ".to_string());
        }
        if brute.len() as u128 != formula {
            problems.push(format!("{} points, formula {formula}", brute.len()));
        }
        if let Some(&(_, total)) = expected_totals.iter().find(|(q, _)| *q == t.q()) {
            if brute.len() as u128 != total {
                problems.push(format!("{} points, expected {total}", brute.len()));
            }
        }
        let tally = brute.zero_tally();
        if !expected_zero_pattern(t.prime_power()).matches(&tally) {
            problems.push(format!("zero pattern {tally:?}"));
        }
        (!problems.is_empty()).then(|| format!("q={}: {}", t.q(), problems.join("; ")))
    })
}

fn cube_corollary() -> Vec<String> {
    par_failures(&towers(prime_power_qs(16), &[1, 2, 3]), |t| {
        report_failure(verify::check_cube_corollary(t).unwrap())
    })
}

fn square_corollary() -> Vec<String> {
    par_failures(&towers(prime_power_qs(9), &[2]), |t| {
        report_failure(verify::check_square_corollary(t).unwrap())
    })
}

fn remark() -> Vec<String> {
    let Some(w) = verify::remark_counterexample().unwrap() else {
        return vec!["no witness in GF(16)".into()];
    };
    let f = FieldCtx::new(2, 4).unwrap();
    let [u, v, x] = [&w.u, &w.v, &w.w].map(|c| f.elem_from_coeffs(c).unwrap());
    let product = f.mul(f.mul(u, v), x);
    // order recomputed by repeated multiplication
    let mut order = 1;
    let mut acc = product;
    while acc != f.one() {
        acc = f.mul(acc, product);
        order += 1;
    }
    let mut failures = Vec::new();
    if !f.add(f.add(u, v), x).is_zero() {
        failures.push("u + v + w != 0".into());
    }
    if order != 15 || w.order != 15 {
        failures.push(format!("order {order} (reported {})", w.order));
    }
    failures
}

fn factorization() -> Vec<String> {
    let mut failures = par_failures(&towers(prime_power_qs(16), &[3]), |t| {
        report_failure(verify::check_factorization_cubic(t).unwrap())
    });
    failures.extend(par_failures(&towers(prime_power_qs(9), &[2]), |t| {
        report_failure(verify::check_factorization_surface(t).unwrap())
    }));
    failures.extend(par_failures(&fields_up_to(81), |f| {
        let r = verify::check_symmetric_identity(f, f.order(), 1);
        let exhaustive = r.instances == f.order().pow(3);
        report_failure(r).or_else(|| (!exhaustive).then(|| format!("{:?} not exhaustive", f.descriptor())))
    }));
    failures
}

fn structure() -> Vec<String> {
    let mut failures = par_failures(&towers(prime_power_qs(64), &[3]), |t| {
        let k = t.t_kernel().unwrap();
        (k.len() as u64 != t.q() * t.q()).then(|| format!("q={}: kernel size {}", t.q(), k.len()))
    });
    for q in 2..=10_000u64 {
        let euclid = {
            let (mut a, mut b) = ((q - 1) as u128 * (q - 1) as u128, (q as u128).pow(3) - 1);
            while b != 0 {
                (a, b) = (b, a % b);
            }
            a
        };
        let case = if q % 3 == 1 { 3 * (q - 1) } else { q - 1 };
        if gcd_helper(q) as u128 != euclid || gcd_helper(q) != case {
            failures.push(format!("gcd_helper({q}) = {}", gcd_helper(q)));
        }
    }
    let small = fields_up_to(256);
    failures.extend(par_failures(&small, axioms_exhaustive));
    failures.extend(par_failures(&small, freshman_exhaustive));
    for (k, (p, n)) in [(2u64, 12u32), (3, 7), (101, 2), (65521, 1), (2_147_483_647, 2)].into_iter().enumerate() {
        failures.extend(axioms_sampled(&FieldCtx::new(p, n).unwrap(), 10_000, k as u64));
    }
    for pp in prime_powers_up_to(64) {
        for i in 1..=4u32 {
            let Ok(t) = TowerCtx::new(pp, i) else { continue };
            if t.top().order() > 1 << 16 {
                continue;
            }
            if frobenius_fixed_count(&t) != pp.q() {
                failures.push(format!("q={} i={i}: fixed set size", pp.q()));
            }
            let b = t.base();
            for a in b.elements() {
                if t.frobenius_q(t.embed(a)) != t.embed(a) {
                    failures.push(format!("q={} i={i}: embed not fixed", pp.q()));
                    break;
                }
            }
        }
    }
    failures
}

fn performance() -> (Vec<String>, Duration) {
    let mut failures = Vec::new();
    let t = tower(101, 3);
    let start = Instant::now();
    let n = curve::enumerate_parametric(&t).unwrap().len() as u128;
    let elapsed = start.elapsed();
    let formula = count_formula(PrimePower::new(101).unwrap(), 3).unwrap().value;
    if n != 2_040_000 || formula != 2_040_000 {
        failures.push(format!("{n} points, formula {formula}"));
    }
    if elapsed >= Duration::from_secs(30) {
        failures.push(format!("took {elapsed:?}"));
    }
    match curve::enumerate_brute(&t, ScanOptions::default()) {
        Err(Error::BudgetExceeded { representatives, .. }) => {
            if representatives != 1_061_521_180_903 {
                failures.push(format!("refusal names {representatives} representatives"));
            }
        }
        other => failures.push(format!("brute scan not refused: {:?}", other.map(|s| s.len()))),
    }
    if check_budget(101u64.pow(3), 3, DEFAULT_BUDGET).is_ok() {
        failures.push("budget guard admits the scan".into());
    }
    (failures, elapsed)
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("curve oracle equivalence, q <= 16, i = 1..3", curve_oracle),
        ("curve count formulas for q <= 64, spot values", curve_counts),
        ("surface oracle, counts and zero patterns, q <= 9", surface_oracle),
        ("uvw is a cube on every curve point, q <= 16", cube_corollary),
        ("uvwx is a square on every surface point, q <= 9", square_corollary),
        ("GF(16) triple with uvw of order 15", remark),
        ("factorization identities", factorization),
        ("kernel size, gcd helper, field axioms, Frobenius", structure),
    ];
    let mut all_ok = true;
    let mut line = |k: usize, name: &str, failures: &[String], elapsed: Duration| {
        let status = if failures.is_empty() { "PASS" } else { "FAIL" };
        println!("criterion {k}: {status} {name} ({} ms)", elapsed.as_millis());
        for f in failures.iter().take(10) {
            println!("    {f}");
        }
        all_ok &= failures.is_empty();
    };
    for (k, (name, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let failures = run();
        line(k + 1, name, &failures, start.elapsed());
    }
    let (failures, elapsed) = performance();
    line(9, "q = 101, i = 3 parametric under 30 s, brute scan refused", &failures, elapsed);
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
