use proptest::prelude::*;

use pieri_rank::bwb::{bwb, BwbResult};
use pieri_rank::partitions::Weight;
use pieri_rank::weylkostant::{
    dotted_action, family_generator, kostant_weights, minimal_coset_reps, CartanType, FamilyKind, RootDatum, WeylWord,
};

fn datum_strategy() -> impl Strategy<Value = RootDatum> {
    prop_oneof![
        (2usize..=5).prop_map(|n| RootDatum::a(n).unwrap()),
        (2usize..=4).prop_map(|n| RootDatum::c(n).unwrap()),
        (3usize..=5).prop_map(|n| RootDatum::d(n).unwrap()),
        Just(RootDatum::e6()),
    ]
}

fn word(rank: usize, max_len: usize) -> impl Strategy<Value = WeylWord> {
    proptest::collection::vec(1..=rank, 0..=max_len).prop_map(WeylWord::new)
}

fn weight_for(d: &RootDatum, v: Vec<i64>) -> Weight {
    match d.cartan_type() {
        CartanType::E6 => Weight::fundamental(v),
        _ => Weight::epsilon(v),
    }
}

fn inversions(p: &[i64]) -> usize {
    (0..p.len()).flat_map(|i| (i + 1..p.len()).map(move |j| (i, j))).filter(|&(i, j)| p[i] < p[j]).count()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dotted_action_is_a_group_action(
        (d, u, v, beta) in datum_strategy().prop_flat_map(|d| {
            let (r, dim) = (d.rank(), d.dim());
            (Just(d), word(r, 6), word(r, 6), proptest::collection::vec(-5i64..=5, dim))
        })
    ) {
        let beta = weight_for(&d, beta);
        let lhs = dotted_action(&d, &u.compose(&v), &beta).unwrap();
        let rhs = dotted_action(&d, &u, &dotted_action(&d, &v, &beta).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let back = dotted_action(&d, &u.inverse(), &dotted_action(&d, &u, &beta).unwrap()).unwrap();
        prop_assert_eq!(back, beta);
    }

    #[test]
    fn length_is_reduced_and_has_parity((d, w) in datum_strategy().prop_flat_map(|d| { let r = d.rank(); (Just(d), word(r, 8)) })) {
        let l = d.length(&w).unwrap();
        prop_assert!(l <= w.letters.len());
        prop_assert_eq!(l % 2, w.letters.len() % 2);
        prop_assert_eq!(d.length(&w.inverse()).unwrap(), l);
    }

    #[test]
    fn type_a_length_counts_inversions((n, w) in (2usize..=6).prop_flat_map(|n| (Just(n), word(n - 1, 10)))) {
        let d = RootDatum::a(n).unwrap();
        let moved = d.act_raw(&w, &d.rho().entries).unwrap();
        prop_assert_eq!(d.length(&w).unwrap(), inversions(&moved));
    }

    #[test]
    fn bwb_vanishing_or_one_degree(lambda in proptest::collection::vec(0i64..=6, 1..=4), d in -8i64..=12) {
        let mut lambda = lambda;
        lambda.sort_unstable_by(|a, b| b.cmp(a));
        let n = lambda.len() + 1;
        let mut shifted: Vec<i64> = std::iter::once(d).chain(lambda.iter().copied()).enumerate().map(|(i, x)| x + (n - 1 - i) as i64).collect();
        let repeated = { let mut s = shifted.clone(); s.sort_unstable(); s.windows(2).any(|w| w[0] == w[1]) };
        match bwb(&lambda, d, n).unwrap() {
            BwbResult::Vanishing { vanishing } => prop_assert!(vanishing && repeated),
            BwbResult::Nonvanishing { degree, weight } => {
                prop_assert!(!repeated);
                prop_assert!(weight.windows(2).all(|w| w[0] >= w[1]));
                prop_assert_eq!(degree, inversions(&shifted));
                shifted.sort_unstable_by(|a, b| b.cmp(a));
                let back: Vec<i64> = shifted.iter().enumerate().map(|(i, x)| x - (n - 1 - i) as i64).collect();
                prop_assert_eq!(weight, back);
            }
        }
    }

    #[test]
    fn e6_family_rows_are_partitions(a in proptest::collection::vec(0i64..=6, 6)) {
        let r = family_generator(FamilyKind::E6Beta, &a, 6).unwrap();
        prop_assert_eq!(r.betas.len(), 4);
        prop_assert_eq!(&r.lambda, &r.betas[0]);
        prop_assert_eq!(&r.mu, &r.betas[1]);
    }
}

#[test]
fn coset_representatives_are_levi_dominant_and_minimal() {
    let cases: Vec<(RootDatum, usize, usize)> = vec![
        (RootDatum::a(5).unwrap(), 2, 4),
        (RootDatum::c(4).unwrap(), 4, 6),
        (RootDatum::d(5).unwrap(), 5, 5),
        (RootDatum::e6(), 6, 5),
    ];
    for (d, node, max) in cases {
        let reps = minimal_coset_reps(&d, node, max).unwrap();
        let rho = d.rho().entries;
        let mut seen = std::collections::BTreeSet::new();
        for (len, level) in reps.iter().enumerate() {
            for w in level {
                assert_eq!(d.length(w).unwrap(), len, "{} {}", d.cartan_type(), w.render(&d));
                let v = d.act_raw(&w.inverse(), &rho).unwrap();
                assert!(d.is_levi_dominant(&v, node, true), "{} {}", d.cartan_type(), w.render(&d));
                assert!(seen.insert(v), "duplicate coset for {}", w.render(&d));
            }
        }
    }
}

#[test]
fn coset_counts() {
    // W(C4)/W(A3) has 16 elements, W(E6)/W(A5) has 72
    let c4 = minimal_coset_reps(&RootDatum::c(4).unwrap(), 4, 16).unwrap();
    assert_eq!(c4.iter().map(Vec::len).sum::<usize>(), 16);
    let e6 = minimal_coset_reps(&RootDatum::e6(), 6, 36).unwrap();
    assert_eq!(e6.iter().map(Vec::len).sum::<usize>(), 72);
    // W(A4)/(W(A1)×W(A2)) is counted by C(5,2)
    let a4 = minimal_coset_reps(&RootDatum::a(5).unwrap(), 2, 10).unwrap();
    assert_eq!(a4.iter().map(Vec::len).sum::<usize>(), 10);
}

#[test]
fn kostant_rejects_non_dominant() {
    let c4 = RootDatum::c(4).unwrap();
    assert!(kostant_weights(&c4, 4, &Weight::epsilon(vec![0, 1, 0, 0]), 2).is_err());
}
