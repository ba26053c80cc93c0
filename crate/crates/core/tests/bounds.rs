use pieri_rank::bounds::{
    border_rank_bound, c_constant, check_family_constraint, generic_rank_probe, generic_rank_probe_with, BoundOptions,
    FamilyRule, RankSource,
};
use pieri_rank::exactla::RankStrategy;
use pieri_rank::partitions::{partitions_of, pieri_summands, strip_type, Partition, StripType};
use pieri_rank::pieri::{build_pieri_tensor, UKind};
use pieri_rank::Error;

fn p(v: &[u32]) -> Partition {
    Partition::new(v.to_vec()).unwrap()
}

fn oracle() -> BoundOptions {
    BoundOptions { source: RankSource::Oracle, ..Default::default() }
}

#[test]
fn probe_examples() {
    let t = build_pieri_tensor(&p(&[6, 2]), &p(&[6, 3]), UKind::V, 3).unwrap();
    let r = generic_rank_probe(&t, 5, 42).unwrap();
    assert_eq!(r.ranks, vec![54; 5]);
    assert!(r.constant && r.exact);

    let t = build_pieri_tensor(&p(&[3, 1]), &p(&[3, 3]), UKind::Sym(2), 4).unwrap();
    assert_eq!(generic_rank_probe(&t, 5, 42).unwrap().max_rank, 36);

    assert!(matches!(generic_rank_probe(&t, 0, 1), Err(Error::Parameter(_))));
}

#[test]
fn same_seed_same_ranks() {
    let t = build_pieri_tensor(&p(&[2, 1]), &p(&[2, 2]), UKind::V, 3).unwrap();
    let a = generic_rank_probe(&t, 4, 9).unwrap();
    let b = generic_rank_probe(&t, 4, 9).unwrap();
    assert_eq!(a.ranks, b.ranks);
    assert_eq!(a.seed, 9);
}

#[test]
fn semicontinuity() {
    for (l, m, u, n) in [
        (p(&[2, 1]), p(&[2, 2]), UKind::V, 3),
        (p(&[2]), p(&[2, 2]), UKind::Sym(2), 3),
        (p(&[1]), p(&[1, 1]), UKind::V, 3),
    ] {
        let t = build_pieri_tensor(&l, &m, u, n).unwrap();
        let mut best = 0;
        for trials in [1, 3, 6] {
            let r = generic_rank_probe_with(&t, trials, 5, 1_000_000, &RankStrategy::Exact).unwrap();
            assert!(r.max_rank <= t.k.min(t.l));
            assert!(r.max_rank >= best);
            best = r.max_rank;
        }
    }
}

#[test]
fn two_routes_agree_on_second_row() {
    let c = c_constant(&p(&[5, 2, 1]), &p(&[5, 2, 2]), UKind::V, 4).unwrap();
    assert_eq!(c.r_predicted, 140);
    assert_eq!(c.r_predicted_c2, Some(140));
}

#[test]
fn first_row_readings() {
    let c = c_constant(&p(&[6, 2]), &p(&[6, 3]), UKind::V, 3).unwrap();
    let names: Vec<_> = c.aux.iter().map(|a| (a.sequence.clone(), a.dim, a.dim_nonzero_parts)).collect();
    assert_eq!(names[0], (vec![2, 2, 0], 6, 6));
    assert_eq!(names[1], (vec![5, 2, 2, 0], 0, 10));
    assert_eq!(names[2], (vec![6, 3, 3], 10, 10));
    assert_eq!((c.r_predicted, c.r_nonzero_parts_reading), (54, Some(64)));
}

#[test]
fn constraint_examples() {
    let v = check_family_constraint(&p(&[3, 1]), &p(&[3, 3]), UKind::Sym(2), 4);
    assert_eq!(v.rule, FamilyRule::Sym2SecondRow);
    assert!(v.certified_not_minimal && !v.outside_known_families);
    let v = check_family_constraint(&p(&[2]), &p(&[3]), UKind::V, 2);
    assert!(!v.certified_not_minimal);
}

#[test]
fn single_box_dichotomy_and_constancy() {
    for n in 2..=4 {
        for size in 0..=4 {
            for lambda in partitions_of(size, n) {
                for mu in pieri_summands(&lambda, 1, UKind::V.pieri_kind(), n) {
                    let t = build_pieri_tensor(&lambda, &mu, UKind::V, n).unwrap();
                    let r = generic_rank_probe_with(&t, 10, 3, 1_000_000, &RankStrategy::Exact).unwrap();
                    assert!(r.constant, "{lambda}→{mu}: {:?}", r.ranks);
                    let StripType::SameRow { row, .. } = strip_type(&lambda, &mu) else { panic!() };
                    let full = r.max_rank == t.k.min(t.l);
                    assert_eq!(full, row == 1 || row == n, "{lambda}→{mu} n={n}");
                }
            }
        }
    }
}

#[test]
fn certified_pairs_beat_the_trivial_bound() {
    let pairs = [
        (p(&[5, 2, 1]), p(&[5, 2, 2]), UKind::V, 4),
        (p(&[2, 1]), p(&[2, 2]), UKind::V, 3),
        (p(&[3, 1]), p(&[3, 3]), UKind::Sym(2), 4),
        (p(&[3, 2, 2, 1]), p(&[3, 3, 3, 1]), UKind::Wedge(2), 5),
    ];
    for (l, m, u, n) in pairs {
        let rep = border_rank_bound(&l, &m, u, n, &BoundOptions::default()).unwrap();
        assert!(rep.constraint.certified_not_minimal, "{l}→{m}");
        assert!(rep.exceeds_minimal, "{l}→{m}: bound {}", rep.lower_bound);
        assert!(!rep.r_disagreement);
        assert!(rep.r <= rep.k.min(rep.l));
    }
}

#[test]
fn trivial_pair() {
    for n in 2..=4 {
        let rep = border_rank_bound(&Partition::empty(), &p(&[1]), UKind::V, n, &oracle()).unwrap();
        assert_eq!((rep.r, rep.lower_bound as usize), (1, n));
        assert!(!rep.exceeds_minimal);
    }
}

#[test]
fn theorem_source_without_hypothesis_is_rejected() {
    let opts = BoundOptions { source: RankSource::TheoremC, ..Default::default() };
    assert!(matches!(border_rank_bound(&p(&[2]), &p(&[3]), UKind::V, 2, &opts), Err(Error::Hypothesis(_))));
}

#[test]
fn measured_flattening_matches_theorem() {
    let opts = BoundOptions { measure_flattening: true, ..Default::default() };
    let rep = border_rank_bound(&p(&[6, 2]), &p(&[6, 3]), UKind::V, 3, &opts).unwrap();
    assert_eq!(rep.flattening_rank.rank(), 3840);
    assert_eq!(rep.lower_bound, 72);
}
