use ca1_core::blowup::WeightVec4;
use ca1_core::filtration::{filtration_dims, graded_counts, special_surface_type, CA1Ring, WPoly};
use ca1_core::numeric::gcd;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

fn config() -> Config {
    Config {
        cases: 256,
        rng_seed: RngSeed::Fixed(0xca1),
        failure_persistence: None,
        ..Config::default()
    }
}

/// `p` with `p(0) = 0` and degree below `a`.
fn surface_input() -> impl Strategy<Value = (i64, WPoly, u32)> {
    (2i64..=8).prop_flat_map(|a| {
        let coeffs = prop::collection::vec(
            prop_oneof![3 => Just(0i64), 1 => -3i64..=3],
            (a - 1) as usize,
        );
        (Just(a), coeffs, 2u32..=20).prop_map(|(a, tail, n)| {
            let mut c = vec![0];
            c.extend(tail);
            (a, WPoly::new(c), n)
        })
    })
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn special_type_bound((a, p, n) in surface_input()) {
        let ty = special_surface_type(a, &p, n).unwrap();
        prop_assert!(ty < 2 * a);
        prop_assert_eq!(ty == 2 * a - 1, p.is_zero() && n as i64 >= 2 * a);
    }

    #[test]
    fn graded_counts_on_family(s in 1i64..=12, t in 1i64..=12, extra in 0u32..6) {
        prop_assume!(s <= t && gcd(s, t) == 1);
        let w = WeightVec4::family(s, t).unwrap();
        let ring = CA1Ring::new(2 * t as u32 + extra).unwrap();
        let counts = graded_counts(&ring, &w, t).unwrap();
        let expected: Vec<u64> = (0..t).map(|i| (i / s + 1) as u64).collect();
        prop_assert_eq!(counts, expected);
        let dims = filtration_dims(&ring, &w, t).unwrap();
        prop_assert!(dims.windows(2).all(|p| p[0] <= p[1]));
    }
}
