mod common;

use proptest::prelude::*;
use sumset_core::{oplus, oplus_2d, oplus_many, CardSumSet, ConvConfig, Error, SumSet};

fn members(bound: usize) -> impl Strategy<Value = Vec<usize>> {
    prop_oneof![
        prop::collection::vec(0..=bound, 0..12),
        prop::collection::vec(0..=bound, 0..=bound),
    ]
}

fn set(bound: usize, m: &[usize]) -> SumSet {
    SumSet::from_members(bound, m.iter().copied())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn oplus_matches_double_loop(a in members(512), b in members(512), u in 0usize..1100) {
        let expect: Vec<_> = common::pairwise(&a, &b, u).into_iter().collect();
        for conv in [ConvConfig::with_naive_cutoff(0), ConvConfig::default()] {
            let got = oplus(&conv, &set(512, &a), &set(512, &b), u).unwrap();
            prop_assert_eq!(got.bound(), u);
            prop_assert_eq!(got.to_vec(), expect.clone());
        }
    }

    #[test]
    fn monotone_in_left_operand(a in members(300), extra in members(300), b in members(300), u in 0usize..700) {
        let conv = ConvConfig::with_naive_cutoff(0);
        let small = set(300, &a);
        let mut big = small.clone();
        big.union_with(&set(300, &extra));
        let lo = oplus(&conv, &small, &set(300, &b), u).unwrap();
        let hi = oplus(&conv, &big, &set(300, &b), u).unwrap();
        prop_assert!(lo.is_subset_of(&hi));
    }

    #[test]
    fn zero_keeps_both_operands(a in members(300), b in members(300), u in 0usize..700) {
        let conv = ConvConfig::with_naive_cutoff(0);
        let mut sa = set(300, &a);
        let mut sb = set(300, &b);
        sa.insert(0);
        sb.insert(0);
        let r = oplus(&conv, &sa, &sb, u).unwrap();
        for m in sa.iter().chain(sb.iter()).filter(|&m| m <= u) {
            prop_assert!(r.contains(m));
        }
    }

    #[test]
    fn disjoint_union_identity(
        pool in prop::collection::btree_set(1usize..200, 0..14),
        mask in any::<u16>(),
        u in 0usize..800,
    ) {
        let pool: Vec<_> = pool.into_iter().collect();
        let (x, y): (Vec<_>, Vec<_>) = pool.iter().enumerate().partition(|(i, _)| mask >> i & 1 == 1);
        let x: Vec<usize> = x.into_iter().map(|(_, &v)| v).collect();
        let y: Vec<usize> = y.into_iter().map(|(_, &v)| v).collect();
        let sx = SumSet::from_members(u, common::subset_sums(&x, u));
        let sy = SumSet::from_members(u, common::subset_sums(&y, u));
        let joined = oplus(&ConvConfig::with_naive_cutoff(0), &sx, &sy, u).unwrap();
        prop_assert_eq!(joined.to_vec(), common::subset_sums(&pool, u).into_iter().collect::<Vec<_>>());
    }

    #[test]
    fn fold_equals_pick_one_from_each(sets in prop::collection::vec(members(40), 1..5), u in 0usize..120) {
        let mut expect: Vec<usize> = vec![0];
        for (k, m) in sets.iter().enumerate() {
            let prev = if k == 0 { vec![0] } else { expect.clone() };
            expect = common::pairwise(&prev, m, u).into_iter().collect();
        }
        let typed: Vec<SumSet> = sets.iter().map(|m| set(40, m)).collect();
        let got = oplus_many(&ConvConfig::with_naive_cutoff(0), &typed, u).unwrap();
        prop_assert_eq!(got.to_vec(), expect);
    }

    #[test]
    fn oplus_2d_matches_quadruple_loop(
        a in prop::collection::vec((0usize..80, 0usize..6), 0..40),
        b in prop::collection::vec((0usize..80, 0usize..6), 0..40),
        u in 0usize..170,
        c in 0usize..12,
    ) {
        let ca = CardSumSet::from_pairs(80, 6, a.iter().copied());
        let cb = CardSumSet::from_pairs(80, 6, b.iter().copied());
        let got = oplus_2d(&ConvConfig::with_naive_cutoff(0), &ca, &cb, u, c).unwrap();
        prop_assert_eq!((got.sum_bound(), got.card_bound()), (u, c));
        prop_assert_eq!(got.to_sorted_pairs(), common::pairwise_2d(&a, &b, u, c).into_iter().collect::<Vec<_>>());
    }
}

#[test]
fn worked_examples() {
    let conv = ConvConfig::default();
    let r = oplus(&conv, &set(3, &[2, 3]), &set(3, &[2, 3]), 4).unwrap();
    assert_eq!(r.to_vec(), vec![4]);
    let r = oplus_many(&conv, &[set(1, &[0, 1]), set(2, &[0, 2]), set(4, &[0, 4])], 7).unwrap();
    assert_eq!(r.to_vec(), (0..=7).collect::<Vec<_>>());
    let r = oplus_many(&conv, &[set(1, &[1]), set(1, &[1]), set(1, &[1])], 2).unwrap();
    assert!(r.is_empty());
    assert!(matches!(oplus_many(&conv, &[], 3), Err(Error::EmptySequence)));

    let a = CardSumSet::from_pairs(10, 2, [(0, 0), (3, 1)]);
    let b = CardSumSet::from_pairs(10, 2, [(0, 0), (4, 1)]);
    let r = oplus_2d(&conv, &a, &b, 10, 2).unwrap();
    assert_eq!(r.to_sorted_pairs(), vec![(0, 0), (3, 1), (4, 1), (7, 2)]);
    let a = CardSumSet::from_pairs(10, 2, [(6, 1)]);
    assert!(oplus_2d(&conv, &a, &a, 10, 2).unwrap().is_empty());
}
