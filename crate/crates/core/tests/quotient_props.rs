use ca1_core::blowup::{
    discrepancy_certificate, normalize_quotient, reid_tai, valuation_discrepancy, CyclicAction,
    MonoPoly,
};
use ca1_core::numeric::gcd;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

fn config(cases: u32) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(0xca1),
        failure_persistence: None,
        ..Config::default()
    }
}

fn action3() -> impl Strategy<Value = CyclicAction> {
    (2i64..=60).prop_flat_map(|r| {
        prop::collection::vec(0..r, 3).prop_map(move |w| CyclicAction::new(r, &w).unwrap())
    })
}

/// Actions of the form `1/r(1, -1, b)`, shuffled and rescaled by a unit.
fn terminal_shape() -> impl Strategy<Value = CyclicAction> {
    (2i64..=60)
        .prop_flat_map(|r| (Just(r), 1..r, 1..r, 0usize..6))
        .prop_filter("units", |(r, b, u, _)| gcd(*b, *r) == 1 && gcd(*u, *r) == 1)
        .prop_map(|(r, b, u, perm)| {
            let base = [1, r - 1, b];
            let order = [
                [0, 1, 2],
                [0, 2, 1],
                [1, 0, 2],
                [1, 2, 0],
                [2, 0, 1],
                [2, 1, 0],
            ][perm];
            let w: Vec<i64> = order.iter().map(|&k| base[k]).collect();
            CyclicAction::new(r, &w).unwrap().scaled(u)
        })
}

proptest! {
    #![proptest_config(config(2000))]

    #[test]
    fn reid_tai_matches_normal_form(q in action3()) {
        prop_assert_eq!(reid_tai(&q).is_terminal(), normalize_quotient(&q).is_some());
    }

    #[test]
    fn normal_form_is_equivalent(q in terminal_shape()) {
        prop_assert!(reid_tai(&q).is_terminal());
        let (r, b) = normalize_quotient(&q).unwrap();
        prop_assert_eq!(r, q.r);
        prop_assert!(CyclicAction::new(r, &[1, r - 1, b]).unwrap().equivalent(&q));
    }

    #[test]
    fn scaling_by_units_preserves_verdict(q in action3(), u in 1i64..60) {
        let u = (u..).find(|&x| gcd(x, q.r) == 1).unwrap();
        prop_assert_eq!(reid_tai(&q).is_terminal(), reid_tai(&q.scaled(u)).is_terminal());
    }
}

#[test]
fn one_minus_one_b_is_terminal_up_to_200() {
    for r in 2..=200 {
        for b in (1..r).filter(|&b| gcd(b, r) == 1) {
            let q = CyclicAction::new(r, &[1, r - 1, b]).unwrap();
            assert!(reid_tai(&q).is_terminal(), "1/{r}(1,-1,{b})");
        }
    }
}

#[test]
fn non_unit_third_weight_is_not_terminal() {
    for r in 2..=60 {
        for b in (0..r).filter(|&b| gcd(b, r) != 1) {
            let q = CyclicAction::new(r, &[1, r - 1, b]).unwrap();
            assert!(!reid_tai(&q).is_terminal(), "1/{r}(1,-1,{b})");
        }
    }
}

fn small_action4() -> impl Strategy<Value = CyclicAction> {
    (2i64..=4).prop_flat_map(|r| {
        prop::collection::vec(0..r, 4).prop_map(move |w| CyclicAction::new(r, &w).unwrap())
    })
}

proptest! {
    #![proptest_config(config(64))]

    /// Anything the search returns survives independent re-verification.
    #[test]
    fn certificates_reverify(q in small_action4(), k in 2u32..8) {
        let g = MonoPoly::ca1(k);
        if let Some(c) = discrepancy_certificate(&g, &q, 2) {
            prop_assert!(c.verify(&g, &q));
            prop_assert_eq!(valuation_discrepancy(&c.numerators, q.r, &g).unwrap(), c.discrepancy.clone());
            prop_assert!(!c.discrepancy.is_positive());
            let mut bad = c.clone();
            bad.discrepancy = &bad.discrepancy + 1;
            prop_assert!(!bad.verify(&g, &q));
        }
    }
}

#[test]
fn z2_cover_certificates_for_all_exponents() {
    let q = CyclicAction::new(2, &[1, 1, 1, 1]).unwrap();
    for n in 4..=12 {
        let g = MonoPoly::ca1(2 * n - 6);
        let c = discrepancy_certificate(&g, &q, 4).expect("half vector");
        assert!(c.verify(&g, &q));
    }
}
