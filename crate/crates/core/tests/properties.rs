use proptest::prelude::*;
use widthlab::approx::{find_pointwise_approximator, verify_pointwise, ApproxMode};
use widthlab::auctions::{sia_outcome, single_bid_outcome};
use widthlab::instances::{random_monotone, RandomStyle};
use widthlab::maximize::{batched_greedy_constrained, brute_force_constrained, query_budget};
use widthlab::setfn::{mobius_table, mobius_transform, zeta_table};
use widthlab::widths::{
    is_d_scopic_subadditive, is_d_scopic_submodular, superadditive_width, supermodular_degree,
    supermodular_width, width_report,
};
use widthlab::{ExplicitFunction, HypergraphFunction, Rational, SetFunction, Subset};

fn style() -> impl Strategy<Value = RandomStyle> {
    prop::sample::select(RandomStyle::ALL.to_vec())
}

/// Hypergraph with small nonnegative integer weights, built in any scalar.
fn integer_edges() -> impl Strategy<Value = (usize, Vec<(u64, u8)>)> {
    (3usize..=6).prop_flat_map(|m| {
        let masks = 1u64..(1u64 << m);
        (Just(m), prop::collection::vec((masks, 1u8..6), 1..8))
    })
}

fn build<S: widthlab::Scalar>(m: usize, edges: &[(u64, u8)]) -> HypergraphFunction<S> {
    let es = edges.iter().map(|&(s, w)| (Subset(s), S::from_u8(w).unwrap()));
    HypergraphFunction::new(m, es).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn mobius_round_trip(m in 2usize..=7, seed in any::<u64>(), st in style()) {
        let f = random_monotone::<f64>(m, seed, st).unwrap();
        let h = mobius_transform(&f).unwrap();
        for s in f.ground().subsets() {
            prop_assert!((h.value(s) - f.value(s)).abs() < 1e-9);
        }
        let mut t: Vec<f64> = f.ground().subsets().map(|s| f.value(s)).collect();
        let orig = t.clone();
        mobius_table(&mut t);
        zeta_table(&mut t);
        for (a, b) in t.iter().zip(&orig) {
            prop_assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn scopic_matches_widths(m in 2usize..=6, seed in any::<u64>(), st in style()) {
        let f = random_monotone::<f64>(m, seed, st).unwrap();
        let smw = supermodular_width(&f).unwrap().0;
        let saw = superadditive_width(&f).unwrap().0;
        prop_assert!(is_d_scopic_submodular(&f, smw).unwrap());
        prop_assert!(is_d_scopic_subadditive(&f, saw).unwrap());
        if smw > 0 {
            prop_assert!(!is_d_scopic_submodular(&f, smw - 1).unwrap());
        }
        if saw > 0 {
            prop_assert!(!is_d_scopic_subadditive(&f, saw - 1).unwrap());
        }
    }

    #[test]
    fn greedy_meets_ratio_and_budget(m in 3usize..=7, seed in any::<u64>(), st in style()) {
        let f = random_monotone::<f64>(m, seed, st).unwrap();
        let d = supermodular_width(&f).unwrap().0;
        let bound = 1.0 - (-1.0 / (d as f64 + 1.0)).exp();
        for k in 1..=m {
            f.counter().reset();
            let (set, trace) = batched_greedy_constrained(&f, k, d).unwrap();
            prop_assert!(set.len() <= k);
            prop_assert!(u128::from(trace.queries) <= query_budget(m, k, d));
            let (_, opt) = brute_force_constrained(&f, k).unwrap();
            prop_assert!(trace.value >= bound * opt - 1e-9);
        }
    }

    #[test]
    fn widths_agree_across_scalars((m, edges) in integer_edges()) {
        let a = width_report(&build::<f64>(m, &edges)).unwrap();
        let b = width_report(&build::<f32>(m, &edges)).unwrap();
        let c = width_report(&build::<Rational>(m, &edges)).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(&a, &c);
        prop_assert!(a.sd <= m);
    }

    #[test]
    fn certificates_verify(m in 3usize..=6, seed in any::<u64>(), target in any::<u64>()) {
        let f = random_monotone::<f64>(m, seed, RandomStyle::Mixed).unwrap();
        let target = Subset(target & f.ground().full().bits());
        let saw = superadditive_width(&f).unwrap().0;
        let c = find_pointwise_approximator(&f, saw, target, ApproxMode::Saw).unwrap();
        prop_assert!(c.verified);
        prop_assert!(c.beta >= 1.0 - 1e-9);
        prop_assert!(verify_pointwise(&f, &c.ch, target, c.beta).unwrap());
    }

    #[test]
    fn auction_outcomes_are_consistent(
        seed in any::<u64>(),
        bids in prop::collection::vec(0.0f64..2.0, 3),
        item_bids in prop::collection::vec(prop::collection::vec(0.0f64..2.0, 4), 3),
    ) {
        let vals: Vec<ExplicitFunction<f64>> = (0..3)
            .map(|i| random_monotone(4, seed.wrapping_add(i), RandomStyle::Mixed).unwrap())
            .collect();
        for out in [
            single_bid_outcome(&vals, &bids).unwrap(),
            sia_outcome(&vals, &item_bids).unwrap(),
        ] {
            prop_assert!(out.allocation.is_disjoint());
            let w = out.allocation.recompute(&vals);
            prop_assert!((w - out.welfare).abs() < 1e-9);
            for i in 0..3 {
                let v = vals[i].value(out.allocation.parts[i]);
                prop_assert!((v - out.payments[i] - out.utilities[i]).abs() < 1e-9);
                prop_assert!(out.payments[i] >= 0.0);
            }
        }
    }
}

#[test]
fn additive_has_zero_widths() {
    let f = build::<f64>(4, &[(1, 1), (2, 2), (4, 3), (8, 4)]);
    assert_eq!(supermodular_degree(&f).unwrap(), 0);
    assert_eq!(supermodular_width(&f).unwrap().0, 0);
    assert_eq!(superadditive_width(&f).unwrap().0, 0);
}
