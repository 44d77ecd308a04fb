use ca1_core::numeric::{gcd, mod_inverse, smallest_residue};
use ca1_core::Rat;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

fn config() -> Config {
    Config {
        cases: 512,
        rng_seed: RngSeed::Fixed(0xca1),
        failure_persistence: None,
        ..Config::default()
    }
}

fn rat() -> impl Strategy<Value = Rat> {
    (-1000i64..1000, 1i64..200).prop_map(|(n, d)| Rat::new(n, d))
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn field_laws(a in rat(), b in rat(), c in rat()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!((&a + &b) + c.clone(), &a + &(&b + &c));
        prop_assert_eq!((&a * &b) * c.clone(), &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &a * &b + &a * &c);
        prop_assert_eq!(&a - &a, Rat::zero());
        prop_assert_eq!(&a + &(-&a), Rat::zero());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.recip(), Rat::one());
            prop_assert_eq!(&(&b / &a) * &a, b.clone());
        }
    }

    #[test]
    fn display_parse_round_trip(a in rat()) {
        prop_assert_eq!(a.to_string().parse::<Rat>().unwrap(), a.clone());
        let js = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<Rat>(&js).unwrap(), a);
    }

    #[test]
    fn order_matches_cross_multiplication(n1 in -500i64..500, d1 in 1i64..100, n2 in -500i64..500, d2 in 1i64..100) {
        let (a, b) = (Rat::new(n1, d1), Rat::new(n2, d2));
        prop_assert_eq!(a < b, n1 * d2 < n2 * d1);
        prop_assert_eq!(a == b, n1 * d2 == n2 * d1);
    }

    #[test]
    fn residue_is_canonical(j in -100_000i64..100_000, r in 1i64..500) {
        let x = smallest_residue(j, r).unwrap();
        prop_assert!((0..r).contains(&x));
        prop_assert_eq!((j - x) % r, 0);
        prop_assert_eq!(smallest_residue(j + 7 * r, r).unwrap(), x);
    }

    #[test]
    fn residue_respects_ring_ops(i in -1000i64..1000, j in -1000i64..1000, r in 1i64..300) {
        let m = |x: i64| smallest_residue(x, r).unwrap();
        prop_assert_eq!(m(i + j), m(m(i) + m(j)));
        prop_assert_eq!(m(i * j), m(m(i) * m(j)));
    }

    #[test]
    fn inverse_exactly_for_units(a in -1000i64..1000, r in 2i64..500) {
        match mod_inverse(a, r) {
            Some(e) => {
                prop_assert_eq!(gcd(a, r), 1);
                prop_assert!((1..r).contains(&e));
                prop_assert_eq!(smallest_residue(a * e, r).unwrap(), 1);
                prop_assert_eq!(mod_inverse(e, r), Some(smallest_residue(a, r).unwrap()));
            }
            None => prop_assert_ne!(gcd(a, r), 1),
        }
    }
}

#[test]
fn bad_modulus_rejected() {
    assert!(smallest_residue(3, 0).is_err());
    assert!(smallest_residue(3, -2).is_err());
    assert_eq!(mod_inverse(5, 1), Some(0));
    assert_eq!(mod_inverse(5, 0), None);
}
