mod common;

use common::{
    axioms_sampled, fields_up_to, freshman_exhaustive, frobenius_fixed_count, nth_power_exhaustive,
    par_failures, pp, tower,
};
use fermat_core::gf::{gcd_helper, prime_powers_up_to, FieldCtx, TowerCtx};
use proptest::prelude::*;

/// Fields too large for exhaustive checks.
const LARGE: [(u64, u32); 6] = [(2, 12), (3, 7), (101, 2), (65521, 1), (2_147_483_647, 2), (7, 9)];

fn large_field() -> impl Strategy<Value = FieldCtx> {
    prop::sample::select(LARGE.to_vec()).prop_map(|(p, n)| FieldCtx::new(p, n).unwrap())
}

fn field_and_elems(k: usize) -> impl Strategy<Value = (FieldCtx, Vec<u64>)> {
    large_field().prop_flat_map(move |f| {
        let order = f.order();
        (Just(f), prop::collection::vec(0..order, k))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn axioms_on_large_fields((f, xs) in field_and_elems(3)) {
        let [a, b, c] = [0, 1, 2].map(|k| f.elem(xs[k]).unwrap());
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
            prop_assert_eq!(f.pow(a, f.order() - 1), f.one());
        }
    }

    #[test]
    fn freshman_on_large_fields((f, xs) in field_and_elems(2)) {
        let (x, y) = (f.elem(xs[0]).unwrap(), f.elem(xs[1]).unwrap());
        let p = f.p();
        prop_assert_eq!(f.pow(f.add(x, y), p), f.add(f.pow(x, p), f.pow(y, p)));
        prop_assert_eq!(f.frobenius(f.mul(x, y)), f.mul(f.frobenius(x), f.frobenius(y)));
    }

    #[test]
    fn pow_adds_exponents((f, xs) in field_and_elems(1), e1 in 0u64..1 << 40, e2 in 0u64..1 << 40) {
        let x = f.elem(xs[0]).unwrap();
        prop_assert_eq!(f.mul(f.pow(x, e1), f.pow(x, e2)), f.pow(x, e1 + e2));
    }

    #[test]
    fn nth_power_criterion((f, xs) in field_and_elems(2), n in 1u64..12) {
        let y = f.elem(xs[0]).unwrap();
        prop_assert!(f.is_nth_power(f.pow(y, n), n).unwrap());
    }
}

fn tower_strategy() -> impl Strategy<Value = (u64, u32)> {
    prop::sample::select(vec![(2, 2), (2, 3), (4, 2), (4, 3), (8, 2), (9, 2), (9, 3), (25, 2), (27, 2), (16, 3)])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn t_map_is_linear_over_the_subfield(q in prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9, 16, 25]), seed in any::<u64>()) {
        let t = tower(q, 3);
        let f = t.top();
        let x = f.elem(seed % f.order()).unwrap();
        let y = f.elem((seed >> 20) % f.order()).unwrap();
        let c = t.subfield()[(seed >> 40) as usize % t.subfield().len()];
        prop_assert_eq!(t.t_map(f.add(x, y)).unwrap(), f.add(t.t_map(x).unwrap(), t.t_map(y).unwrap()));
        prop_assert_eq!(t.t_map(f.mul(c, x)).unwrap(), f.mul(c, t.t_map(x).unwrap()));
    }

    #[test]
    fn frobenius_iterates_to_identity((q, i) in tower_strategy(), seed in any::<u64>()) {
        let t = tower(q, i);
        let x = t.top().elem(seed % t.top().order()).unwrap();
        let mut y = x;
        for _ in 0..i {
            y = t.frobenius_q(y);
        }
        prop_assert_eq!(y, x);
    }
}

#[test]
fn embed_is_a_fixed_ring_homomorphism() {
    for (q, i) in [(4, 2), (4, 3), (8, 2), (9, 2), (9, 3), (16, 2), (16, 3), (25, 2), (27, 2), (32, 3), (49, 2)] {
        let t = tower(q, i);
        let (b, f) = (t.base(), t.top());
        for a in b.elements() {
            assert_eq!(t.frobenius_q(t.embed(a)), t.embed(a), "q={q} i={i}");
            for c in b.elements() {
                assert_eq!(t.embed(b.add(a, c)), f.add(t.embed(a), t.embed(c)));
                assert_eq!(t.embed(b.mul(a, c)), f.mul(t.embed(a), t.embed(c)));
            }
        }
    }
}

#[test]
fn frobenius_fixes_exactly_the_base_field() {
    for pp in prime_powers_up_to(64) {
        for i in 1..=4u32 {
            let Ok(t) = TowerCtx::new(pp, i) else { continue };
            if t.top().order() > 1 << 18 {
                continue;
            }
            assert_eq!(frobenius_fixed_count(&t), pp.q(), "q={} i={i}", pp.q());
        }
    }
}

#[test]
fn kernel_matches_scan_for_small_cubes() {
    for pp in prime_powers_up_to(40) {
        let t = TowerCtx::new(pp, 3).unwrap();
        let scan: Vec<_> = t.top().elements().filter(|&x| t.t_map(x).unwrap().is_zero()).collect();
        assert_eq!(t.t_kernel().unwrap(), scan, "q={}", pp.q());
    }
}

#[test]
fn freshman_dream_small_fields() {
    let failures = par_failures(&fields_up_to(256), freshman_exhaustive);
    assert!(failures.is_empty(), "{failures:?}");
}

#[test]
fn nth_powers_small_fields() {
    let failures = par_failures(&fields_up_to(256), |f| {
        nth_power_exhaustive(f, 2).or_else(|| nth_power_exhaustive(f, 3))
    });
    assert!(failures.is_empty(), "{failures:?}");
}

#[test]
fn sampled_axioms_large_fields() {
    for (k, (p, n)) in LARGE.into_iter().enumerate() {
        let f = FieldCtx::new(p, n).unwrap();
        assert_eq!(axioms_sampled(&f, 10_000, k as u64), None);
    }
}

#[test]
fn construction_is_reproducible() {
    for (p, n) in [(2, 8), (3, 5), (5, 3), (13, 2), (2, 20), (3, 13)] {
        let a = FieldCtx::new(p, n).unwrap();
        let b = FieldCtx::new(p, n).unwrap();
        assert_eq!(a.descriptor(), b.descriptor());
        let step = (a.order() / 512).max(1);
        for x in a.elements().step_by(step as usize) {
            let y = a.elem((x.index() * 7 + 3) % a.order()).unwrap();
            assert_eq!(a.mul(x, y), b.mul(x, y));
        }
    }
    assert_eq!(tower(9, 3).embed_table(), tower(9, 3).embed_table());
}

#[test]
fn element_order_is_strict_and_complete() {
    for (p, n) in [(2, 1), (2, 2), (3, 6)] {
        let f = FieldCtx::new(p, n).unwrap();
        let elems: Vec<_> = f.elements().collect();
        assert_eq!(elems.len() as u64, f.order());
        assert!(elems[0].is_zero());
        assert!(elems.windows(2).all(|w| w[0] < w[1]));
        // highest-index coefficient dominates
        assert!(elems.windows(2).all(|w| {
            let (a, b) = (f.coeffs(w[0]), f.coeffs(w[1]));
            a.iter().rev().cmp(b.iter().rev()).is_lt()
        }));
    }
}

#[test]
fn cube_roots_of_unity_sizes() {
    for f in fields_up_to(256) {
        let expected = if (f.order() - 1) % 3 == 0 { 3 } else { 1 };
        let roots = f.cube_roots_of_unity();
        assert_eq!(roots.len(), expected, "{:?}", f.descriptor());
        assert!(roots.iter().all(|&r| f.pow(r, 3) == f.one()));
    }
}

#[test]
fn gcd_helper_against_euclid() {
    fn euclid(a: u128, b: u128) -> u128 {
        if b == 0 { a } else { euclid(b, a % b) }
    }
    for q in [2u64, 3, 4, 5, 7, 8, 9, 1024, 59049, 1 << 20] {
        let q128 = q as u128;
        assert_eq!(gcd_helper(q) as u128, euclid((q128 - 1).pow(2), q128.pow(3) - 1));
    }
    assert_eq!(gcd_helper(pp(7).q()), 18);
}
