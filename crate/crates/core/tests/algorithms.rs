mod common;

use proptest::prelude::*;
use sumset_core::{
    all_subset_sums, all_subset_sums_with_cardinality, bellman_all_sums, bellman_all_sums_scalar,
    brute_force_all_sums_with_cardinality, decide_subset_sum, decompose_by_residue, default_modulus, make_instance,
    subset_sums_of_congruence_class, ConvConfig, Error, Instance, SolverConfig, SplitStrategy,
};

fn small_instance() -> impl Strategy<Value = Instance> {
    (1usize..=512).prop_flat_map(|u| {
        (prop::collection::btree_set(1..=u, 0..=16.min(u)), Just(u))
            .prop_map(|(s, u)| Instance::new(&s.into_iter().collect::<Vec<_>>(), u, None).unwrap())
    })
}

fn medium_instance() -> impl Strategy<Value = Instance> {
    (1000usize..=100_000).prop_flat_map(|u| {
        (prop::collection::btree_set(1..=u, 1..=200), Just(u))
            .prop_map(|(s, u)| Instance::new(&s.into_iter().collect::<Vec<_>>(), u, None).unwrap())
    })
}

fn forced_cfg() -> SolverConfig {
    SolverConfig::with_conv(ConvConfig::with_naive_cutoff(0))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn small_instances_match_enumeration(inst in small_instance()) {
        let expect: Vec<_> = common::subset_sums(inst.elements(), inst.u()).into_iter().collect();
        prop_assert_eq!(all_subset_sums(&inst, &forced_cfg()).unwrap().to_vec(), expect.clone());
        prop_assert_eq!(all_subset_sums(&inst, &SolverConfig::default()).unwrap().to_vec(), expect.clone());
        prop_assert_eq!(bellman_all_sums(&inst).to_vec(), expect.clone());
        prop_assert_eq!(bellman_all_sums_scalar(&inst).to_vec(), expect);
    }

    #[test]
    fn pairs_match_enumeration(
        elements in prop::collection::btree_set(0usize..120, 0..=12),
        u in 0usize..400,
    ) {
        let elements: Vec<_> = elements.into_iter().collect();
        let got = all_subset_sums_with_cardinality(&elements, u, &forced_cfg()).unwrap();
        let expect: Vec<_> = common::subset_pairs(&elements, u).into_iter().collect();
        prop_assert_eq!(got.card_bound(), elements.len());
        prop_assert_eq!(got.to_sorted_pairs(), expect.clone());
        prop_assert_eq!(
            brute_force_all_sums_with_cardinality(&elements, u).unwrap().to_sorted_pairs(),
            expect
        );
    }

    #[test]
    fn projection_agrees_with_top_level(inst in small_instance()) {
        let pairs = all_subset_sums_with_cardinality(inst.elements(), inst.u(), &forced_cfg()).unwrap();
        let sums = all_subset_sums(&inst, &forced_cfg()).unwrap();
        prop_assert_eq!(pairs.project_sums().to_vec(), sums.to_vec());
    }

    #[test]
    fn random_splits_change_nothing(inst in small_instance(), seed in any::<u64>()) {
        let base = all_subset_sums_with_cardinality(inst.elements(), inst.u(), &forced_cfg()).unwrap();
        let cfg = SolverConfig { split: SplitStrategy::Seeded(seed), ..forced_cfg() };
        let shuffled = all_subset_sums_with_cardinality(inst.elements(), inst.u(), &cfg).unwrap();
        prop_assert_eq!(base, shuffled);
        let full = all_subset_sums(&inst, &cfg).unwrap();
        prop_assert_eq!(full, all_subset_sums(&inst, &forced_cfg()).unwrap());
    }

    #[test]
    fn decomposition_round_trips(inst in small_instance(), b in 1i64..40) {
        let d = decompose_by_residue(&inst, b).unwrap();
        prop_assert_eq!(d.modulus(), b as usize);
        prop_assert_eq!(d.reconstruct(), inst.elements().to_vec());
        for class in d.classes() {
            for (&x, &q) in class.elements.iter().zip(&class.quotients) {
                prop_assert_eq!(x % b as usize, class.residue);
                prop_assert_eq!(q * b as usize + class.residue, x);
                prop_assert!(x <= inst.u());
            }
        }
    }

    #[test]
    fn instance_construction_is_idempotent(
        raw in prop::collection::vec(1i64..300, 0..40),
        u in 0i64..300,
        t in prop::option::of(0i64..300),
    ) {
        let t = t.map(|t| t.min(u));
        let (inst, _) = make_instance(&raw, u, t).unwrap();
        let again: Vec<i64> = inst.elements().iter().map(|&x| x as i64).collect();
        let (inst2, pruned) = make_instance(&again, u, t).unwrap();
        prop_assert!(pruned.is_clean());
        prop_assert_eq!(inst, inst2);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn medium_instances_match_dp(inst in medium_instance()) {
        let fast = all_subset_sums(&inst, &SolverConfig::default()).unwrap();
        prop_assert_eq!(&fast, &bellman_all_sums(&inst));
        prop_assert_eq!(fast.to_vec(), common::table_dp(inst.elements(), inst.u()).into_iter().collect::<Vec<_>>());
    }

    #[test]
    fn any_modulus_gives_the_same_answer(
        elements in prop::collection::btree_set(1usize..3000, 1..=64),
        u in 1usize..4000,
    ) {
        let inst = Instance::new(&elements.into_iter().collect::<Vec<_>>(), u, None).unwrap();
        let expect = bellman_all_sums(&inst);
        for b in 1..=inst.n().max(1) {
            let cfg = SolverConfig { modulus: Some(b), ..SolverConfig::default() };
            prop_assert_eq!(&all_subset_sums(&inst, &cfg).unwrap(), &expect, "b = {}", b);
        }
    }
}

#[test]
fn parallel_classes_match_sequential() {
    let elements: Vec<usize> = (1..400).map(|i| i * 37 % 20_011 + 1).collect();
    let inst = Instance::new(&elements, 20_000, None).unwrap();
    let seq = all_subset_sums(&inst, &SolverConfig::default()).unwrap();
    let cfg = SolverConfig {
        parallel: true,
        ..SolverConfig::default()
    };
    assert_eq!(all_subset_sums(&inst, &cfg).unwrap(), seq);
}

#[test]
fn worked_examples() {
    let cfg = SolverConfig::default();
    let r = all_subset_sums_with_cardinality(&[1, 2, 3], 4, &cfg).unwrap();
    assert_eq!(
        r.to_sorted_pairs(),
        vec![(0, 0), (1, 1), (2, 1), (3, 1), (3, 2), (4, 2)]
    );
    assert_eq!(
        all_subset_sums_with_cardinality(&[], 5, &cfg)
            .unwrap()
            .to_sorted_pairs(),
        vec![(0, 0)]
    );
    assert_eq!(
        all_subset_sums_with_cardinality(&[3], 5, &cfg)
            .unwrap()
            .to_sorted_pairs(),
        vec![(0, 0), (3, 1)]
    );

    let r = subset_sums_of_congruence_class(&[5, 8], 2, 3, 13, &cfg).unwrap();
    assert_eq!(r.to_vec(), vec![0, 5, 8, 13]);
    assert_eq!(
        subset_sums_of_congruence_class(&[], 0, 1, 4, &cfg).unwrap().to_vec(),
        vec![0]
    );
    assert_eq!(
        subset_sums_of_congruence_class(&[4], 0, 4, 3, &cfg).unwrap().to_vec(),
        vec![0]
    );
    assert!(matches!(
        subset_sums_of_congruence_class(&[5, 7], 2, 3, 20, &cfg),
        Err(Error::CongruenceViolation { element: 7, .. })
    ));

    let inst = Instance::new(&[2, 4, 6], 7, None).unwrap();
    assert_eq!(all_subset_sums(&inst, &cfg).unwrap().to_vec(), vec![0, 2, 4, 6]);
    let inst = Instance::new(&[], 9, None).unwrap();
    assert_eq!(all_subset_sums(&inst, &cfg).unwrap().to_vec(), vec![0]);

    let (inst, _) = make_instance(&[3, 34, 4, 12, 5, 2], 9, Some(9)).unwrap();
    assert!(decide_subset_sum(&inst, &cfg).unwrap());
    let inst = Instance::new(&[2, 4], 6, Some(5)).unwrap();
    assert!(!decide_subset_sum(&inst, &cfg).unwrap());
    let inst = Instance::new(&[1], 1, Some(0)).unwrap();
    assert!(decide_subset_sum(&inst, &cfg).unwrap());
    let inst = Instance::new(&[1], 1, None).unwrap();
    assert!(matches!(decide_subset_sum(&inst, &cfg), Err(Error::MissingTarget)));
}

#[test]
fn modulus_choice() {
    assert_eq!(default_modulus(0), 1);
    assert_eq!(default_modulus(1), 1);
    assert_eq!(default_modulus(2), 1);
    assert_eq!(default_modulus(16), 8);
    assert_eq!(default_modulus(1024), 101);
}

#[test]
fn enumeration_guard() {
    let elements: Vec<usize> = (1..=25).collect();
    let err = brute_force_all_sums_with_cardinality(&elements, 10).unwrap_err();
    assert!(matches!(err, Error::TooManyElements { n: 25, max: 24 }));
}
