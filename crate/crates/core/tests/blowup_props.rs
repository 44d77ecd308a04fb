use ca1_core::blowup::{
    analyze, analyze_with_bound, basket_of, jacobian_guard, singular_points_mod_p, Chart,
    CyclicAction, Kind, MonoPoly, Verdict, WeightVec4,
};
use ca1_core::catalog::enumerate_contractions;
use ca1_core::filtration::{filtration_dims, CA1Ring};
use ca1_core::numeric::gcd;
use ca1_core::rr::dim_quotient;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn config(cases: u32) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(0xca1),
        failure_persistence: None,
        ..Config::default()
    }
}

/// Smallest sorted weight list over all generators.
fn canonical(q: &CyclicAction) -> (i64, Vec<i64>) {
    let best = (1..=q.r.max(1))
        .filter(|&u| gcd(u, q.r) == 1)
        .map(|u| {
            let mut w = q.scaled(u).weights;
            w.sort_unstable();
            w
        })
        .min()
        .unwrap_or_default();
    (q.r, best)
}

fn kind_key(k: &Kind) -> String {
    match k {
        Kind::Smooth => "smooth".into(),
        Kind::Quotient { action } => format!("quotient {:?}", canonical(action)),
        Kind::CompoundA { exponent, .. } => format!("cA {exponent}"),
        Kind::HypersurfaceQuotient { action, .. } => format!("hq {:?}", canonical(action)),
        Kind::FixedLocus {
            stabilizer,
            dimension,
        } => format!("fixed {stabilizer} {dimension}"),
        Kind::Unclassified { .. } => "unclassified".into(),
    }
}

fn inventory(w: &WeightVec4, n: u32) -> Vec<(String, &'static str, usize)> {
    let an = analyze_with_bound(w, n, 3).unwrap();
    let mut v: Vec<_> = an
        .reports
        .iter()
        .map(|r| (kind_key(&r.kind), r.verdict.label(), r.count))
        .collect();
    v.sort();
    v
}

fn family_input() -> impl Strategy<Value = (WeightVec4, u32)> {
    (1i64..=6)
        .prop_flat_map(|t| (1..=t, Just(t), 0u32..=4))
        .prop_map(|(s, t, extra)| (WeightVec4::family(s, t).unwrap(), 2 * t as u32 + extra))
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn swapping_x_and_y_is_invisible((w, n) in family_input()) {
        let a = analyze_with_bound(&w, n, 3).unwrap();
        let b = analyze_with_bound(&w.swap_xy(), n, 3).unwrap();
        prop_assert_eq!(a.discrepancy, b.discrepancy);
        prop_assert_eq!(&a.e_cubed, &b.e_cubed);
        prop_assert_eq!(a.verdict.label(), b.verdict.label());
        prop_assert_eq!(inventory(&w, n), inventory(&w.swap_xy(), n));
    }

    #[test]
    fn filtration_equals_colength(t in 1i64..=7, s in 1i64..=7, extra in 0u32..=4) {
        prop_assume!(s <= t && gcd(s, t) == 1);
        let w = WeightVec4::family(s, t).unwrap();
        let n = 2 * t as u32 + extra;
        let data = basket_of(&w, n).unwrap();
        let dims = filtration_dims(&CA1Ring::new(n).unwrap(), &w, data.a).unwrap();
        for i in 1..=data.a {
            prop_assert_eq!(dims[(i - 1) as usize], dim_quotient(i, data.a, &data.basket).unwrap());
        }
    }
}

#[test]
fn swap_symmetry_for_the_exceptional_weights() {
    let w = WeightVec4::new([1, 5, 3, 2]).unwrap();
    for n in 3..=8 {
        assert_eq!(inventory(&w, n), inventory(&w.swap_xy(), n), "N={n}");
    }
}

const PRIMES: [u64; 6] = [5, 7, 11, 13, 17, 19];

#[test]
fn no_stray_singular_points_mod_p() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xca1);
    for n in 2..=8 {
        for c in enumerate_contractions(n).unwrap() {
            let p = *PRIMES.choose(&mut rng).unwrap();
            let an = analyze(&c.weights, n).unwrap();
            assert!(
                jacobian_guard(&an, p).is_empty(),
                "N={n} {} p={p}",
                c.weights
            );
        }
    }
}

#[test]
fn guard_sees_a_singular_curve() {
    // (u1 - u2)^2 + u3^2 is singular along u1 = u2, u3 = 0.
    let g = MonoPoly::from_terms([
        ([2, 0, 0, 0], 1),
        ([1, 1, 0, 0], -2),
        ([0, 2, 0, 0], 1),
        ([0, 0, 2, 0], 1),
    ]);
    let chart = Chart {
        index: 4,
        strict_transform: g,
        action: CyclicAction::trivial(4),
        exceptional_coordinate: 3,
    };
    let pts = singular_points_mod_p(&chart, 7);
    assert!(pts.iter().any(|u| u[0] == 3 && u[1] == 3 && u[2] == 0));
}

#[test]
fn non_coprime_family_is_never_terminal() {
    for t in 2..=5i64 {
        for s in (1..t).filter(|&s| gcd(s, t) > 1) {
            let w = WeightVec4::family(s, t).unwrap();
            for n in 2 * t as u32..=12 {
                let an = analyze(&w, n).unwrap();
                assert!(
                    matches!(an.verdict, Verdict::NonTerminal { .. }),
                    "{w} N={n}"
                );
            }
        }
    }
}
