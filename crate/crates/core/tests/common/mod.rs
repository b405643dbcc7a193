#![allow(dead_code)]

use std::thread;

use fermat_core::gf::{prime_powers_up_to, FieldCtx, FieldElem, PrimePower, TowerCtx};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn pp(q: u64) -> PrimePower {
    PrimePower::new(q).unwrap()
}

pub fn tower(q: u64, i: u32) -> TowerCtx {
    TowerCtx::new(pp(q), i).unwrap()
}

/// Every field GF(p^n) with p^n ≤ max.
pub fn fields_up_to(max: u64) -> Vec<FieldCtx> {
    prime_powers_up_to(max)
        .into_iter()
        .map(|pp| FieldCtx::new(pp.p(), pp.r()).unwrap())
        .collect()
}

/// Runs `check` on every item in parallel and returns the failures.
pub fn par_failures<T: Sync, F>(items: &[T], check: F) -> Vec<String>
where
    F: Fn(&T) -> Option<String> + Sync,
{
    let workers = thread::available_parallelism().map_or(4, |n| n.get());
    let check = &check;
    thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                s.spawn(move || {
                    items
                        .iter()
                        .skip(w)
                        .step_by(workers)
                        .filter_map(check)
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().unwrap()).collect()
    })
}

fn triple_ok(f: &FieldCtx, a: FieldElem, b: FieldElem, c: FieldElem) -> bool {
    f.add(f.add(a, b), c) == f.add(a, f.add(b, c))
        && f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
        && f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
}

fn unary_ok(f: &FieldCtx, a: FieldElem) -> bool {
    let zero = f.zero();
    let one = f.one();
    f.add(a, zero) == a
        && f.mul(a, one) == a
        && f.add(a, f.neg(a)) == zero
        && (a.is_zero() || f.mul(a, f.inv(a).unwrap()) == one)
}

/// Field axioms on all triples; `None` when they hold.
pub fn axioms_exhaustive(f: &FieldCtx) -> Option<String> {
    for a in f.elements() {
        if !unary_ok(f, a) {
            return Some(format!("{:?}: unary axiom fails at {a:?}", f.descriptor()));
        }
        for b in f.elements() {
            if f.add(a, b) != f.add(b, a) || f.mul(a, b) != f.mul(b, a) {
                return Some(format!("{:?}: commutativity fails at {a:?} {b:?}", f.descriptor()));
            }
            for c in f.elements() {
                if !triple_ok(f, a, b, c) {
                    return Some(format!("{:?}: fails at {a:?} {b:?} {c:?}", f.descriptor()));
                }
            }
        }
    }
    None
}

pub fn random_elem(f: &FieldCtx, rng: &mut ChaCha8Rng) -> FieldElem {
    f.elem(rng.gen_range(0..f.order())).unwrap()
}

/// Field axioms on `samples` random triples.
pub fn axioms_sampled(f: &FieldCtx, samples: usize, seed: u64) -> Option<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let (a, b, c) = (random_elem(f, &mut rng), random_elem(f, &mut rng), random_elem(f, &mut rng));
        if !triple_ok(f, a, b, c) || !unary_ok(f, a) || f.mul(a, b) != f.mul(b, a) {
            return Some(format!("{:?}: fails at {a:?} {b:?} {c:?}", f.descriptor()));
        }
    }
    None
}

/// `(x + y)^p = x^p + y^p` on all pairs.
pub fn freshman_exhaustive(f: &FieldCtx) -> Option<String> {
    let p = f.p();
    for x in f.elements() {
        for y in f.elements() {
            if f.pow(f.add(x, y), p) != f.add(f.pow(x, p), f.pow(y, p)) {
                return Some(format!("{:?}: fails at {x:?} {y:?}", f.descriptor()));
            }
        }
    }
    None
}

/// `is_nth_power` against the image of `y ↦ y^n`.
pub fn nth_power_exhaustive(f: &FieldCtx, n: u64) -> Option<String> {
    let mut image = vec![false; f.order() as usize];
    for y in f.elements() {
        image[f.pow(y, n).index() as usize] = true;
    }
    f.elements()
        .find(|&x| f.is_nth_power(x, n).unwrap() != image[x.index() as usize])
        .map(|x| format!("{:?}: n = {n} disagrees at {x:?}", f.descriptor()))
}

/// Number of `x` with `x^q = x` in the top field of `t`.
pub fn frobenius_fixed_count(t: &TowerCtx) -> u64 {
    t.top().elements().filter(|&x| t.frobenius_q(x) == x).count() as u64
}
