//! Invariants and brute-force equivalence on random instances.

mod common;

use itemlab_core::rules::{confidence, exists_confident_rule_with_head_item};
use itemlab_core::theory::{
    enumerate_closed, enumerate_maximal, is_closed, is_maximal, satisfies, theory,
};
use itemlab_core::{
    AssociationRule, ConfidenceThreshold, ConstraintSet, Itemset, Pruning, TransactionDataset,
};
use proptest::prelude::*;

use common::*;

fn dataset_strategy(
    max_items: usize,
    max_rows: usize,
) -> impl Strategy<Value = TransactionDataset> {
    (1..=max_items, 0..=max_rows).prop_flat_map(|(n, m)| {
        proptest::collection::vec(proptest::collection::vec(any::<bool>(), n), m).prop_map(
            move |rows| {
                let names: Vec<String> = (0..n).map(|i| format!("i{i}")).collect();
                let items: Vec<&str> = names.iter().map(String::as_str).collect();
                let text: Vec<String> = rows
                    .iter()
                    .map(|r| {
                        mask_ids(r)
                            .iter()
                            .map(|&i| names[i].clone())
                            .collect::<Vec<_>>()
                            .join(" ")
                    })
                    .collect();
                TransactionDataset::from_rows(&items, &text).unwrap()
            },
        )
    })
}

fn subset_pair(n: usize) -> impl Strategy<Value = (Vec<bool>, Vec<bool>)> {
    (
        proptest::collection::vec(any::<bool>(), n),
        proptest::collection::vec(any::<bool>(), n),
    )
        .prop_map(|(p, extra)| {
            let q: Vec<bool> = p.iter().zip(&extra).map(|(&a, &b)| a || b).collect();
            (p, q)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn cover_matches_naive_scan(ds in dataset_strategy(6, 8), seed in any::<u64>()) {
        let n = ds.universe().len();
        let mut r = rng(seed);
        let pattern = loop {
            let p: Vec<bool> = (0..n).map(|_| rand::Rng::gen_bool(&mut r, 0.4)).collect();
            if p.iter().any(|&b| b) { break p; }
        };
        let rows = rows_of(&ds);
        prop_assert_eq!(ds.cover(&to_itemset(&pattern)).unwrap(), naive_cover(&rows, &pattern));
    }

    #[test]
    fn frequency_is_anti_monotone(
        (ds, (p, q)) in dataset_strategy(8, 12).prop_flat_map(|ds| {
            let n = ds.universe().len();
            (Just(ds), subset_pair(n))
        })
    ) {
        prop_assume!(p.iter().any(|&b| b));
        let (ps, qs) = (to_itemset(&p), to_itemset(&q));
        let cp = ds.cover(&ps).unwrap();
        let cq = ds.cover(&qs).unwrap();
        prop_assert!(cq.iter().all(|j| cp.contains(j)));
        prop_assert!(cq.len() <= cp.len());
        prop_assert!(cp.len() <= ds.len());
    }

    #[test]
    fn doubling_the_bag_doubles_frequencies(ds in dataset_strategy(6, 8), s in 0usize..6) {
        let rows: Vec<String> = ds.transactions().iter()
            .chain(ds.transactions())
            .map(|t| ds.universe().tokens(t).join(" "))
            .collect();
        let names: Vec<&str> = ds.universe().names().iter().map(String::as_str).collect();
        let doubled = TransactionDataset::from_rows(&names, &rows).unwrap();
        for p in all_patterns(ds.universe().len()) {
            let set = to_itemset(&p);
            prop_assert_eq!(doubled.frequency(&set).unwrap(), 2 * ds.frequency(&set).unwrap());
            prop_assert_eq!(doubled.is_frequent(&set, 2 * s).unwrap(), ds.is_frequent(&set, s).unwrap());
        }
    }

    #[test]
    fn confidence_is_exact_and_bounded(ds in dataset_strategy(6, 10), seed in any::<u64>()) {
        let n = ds.universe().len();
        prop_assume!(n >= 2);
        let mut r = rng(seed);
        let place: Vec<u8> = (0..n).map(|_| rand::Rng::gen_range(&mut r, 0..3u8)).collect();
        let body = Itemset::from_ids(n, (0..n).filter(|&i| place[i] == 1)).unwrap();
        let head = Itemset::from_ids(n, (0..n).filter(|&i| place[i] == 2)).unwrap();
        prop_assume!(!head.is_empty());
        let rule = AssociationRule::new(body.clone(), head.clone()).unwrap();
        let rows = rows_of(&ds);
        let fb = naive_freq(&rows, &mask_of(&body));
        match confidence(&ds, &rule) {
            Err(_) => prop_assert_eq!(fb, 0),
            Ok(c) => {
                prop_assert_eq!(c.body, fb);
                prop_assert_eq!(c.joint, naive_freq(&rows, &mask_of(&body.union(&head))));
                prop_assert!(c.joint <= c.body);
            }
        }
    }

    #[test]
    fn satisfies_ignores_term_order(seed in any::<u64>()) {
        let mut r = rng(seed);
        let ds = random_dataset(&mut r, 6, 8, 0.5);
        let c = random_constraints(&mut r, 6, 4);
        let mut reversed = c.terms().to_vec();
        reversed.reverse();
        let rc = ConstraintSet::new(reversed);
        for p in all_patterns(6) {
            let s = to_itemset(&p);
            prop_assert_eq!(satisfies(&ds, &s, &c).unwrap(), satisfies(&ds, &s, &rc).unwrap());
        }
    }

    #[test]
    fn twu_bounds_utility(seed in any::<u64>()) {
        let mut r = rng(seed);
        let qd = random_quantitative(&mut r, 6, 8, 0.5);
        for p in all_patterns(6) {
            let set = to_itemset(&p);
            let u = qd.utility(&set).unwrap();
            prop_assert_eq!(u, naive_utility(&qd, &p));
            for i in set.iter() {
                let single = Itemset::from_ids(6, [i]).unwrap();
                prop_assert!(u <= qd.twu(&single).unwrap());
            }
            let additive: u64 = (0..qd.len()).map(|j| qd.utility_in_transaction(&set, j).unwrap()).sum();
            prop_assert_eq!(u, additive);
        }
    }
}

#[test]
fn enumerate_frequent_equals_brute_force() {
    let mut r = rng(11);
    for case in 0..30 {
        let n = 3 + case % 10; // up to 12 items
        let ds = random_dataset(&mut r, n, 10, 0.6);
        let rows = rows_of(&ds);
        for s in 1..=4 {
            let expected = canonical(
                all_patterns(n)
                    .into_iter()
                    .filter(|p| naive_freq(&rows, p) >= s)
                    .map(|p| mask_ids(&p))
                    .collect(),
            );
            assert_eq!(
                ids_of(&ds.enumerate_frequent(s).unwrap()),
                expected,
                "case {case} s {s}"
            );
        }
    }
}

#[test]
fn enumerate_high_utility_equals_brute_force() {
    let mut r = rng(12);
    for case in 0..30 {
        let n = 3 + case % 12; // up to 14 items
        let qd = random_quantitative(&mut r, n, 8, 0.5);
        let total: u64 = (0..qd.len())
            .map(|j| qd.transaction_utility(j).unwrap())
            .sum();
        let ut = total / 4;
        let expected = naive_high_utility(&qd, ut);
        assert_eq!(
            ids_of(&qd.enumerate_high_utility(ut, Pruning::Twu).unwrap()),
            expected
        );
        assert_eq!(
            ids_of(&qd.enumerate_high_utility(ut, Pruning::None).unwrap()),
            expected
        );
        let first = qd.exists_high_utility_itemset(ut).unwrap();
        assert_eq!(first.map(|p| p.ids()), expected.first().cloned());
    }
}

#[test]
fn theory_and_borders_equal_brute_force() {
    let mut r = rng(13);
    for case in 0..40 {
        let n = 3 + case % 6;
        let ds = random_dataset(&mut r, n, 8, 0.6);
        let c = random_constraints(&mut r, n, 3);
        let rows = rows_of(&ds);
        let th = naive_theory(&c, &rows, n);
        assert_eq!(
            ids_of(&theory(&ds, &c).unwrap()),
            canonical(th.iter().map(|p| mask_ids(p)).collect())
        );
        let max: Vec<Vec<usize>> = th
            .iter()
            .filter(|p| naive_is_maximal(&c, &rows, n, p) == Some(true))
            .map(|p| mask_ids(p))
            .collect();
        let closed: Vec<Vec<usize>> = th
            .iter()
            .filter(|p| naive_is_closed(&c, &rows, n, p) == Some(true))
            .map(|p| mask_ids(p))
            .collect();
        let got_max = ids_of(&enumerate_maximal(&ds, &c).unwrap());
        let got_closed = ids_of(&enumerate_closed(&ds, &c).unwrap());
        assert_eq!(got_max, canonical(max));
        assert_eq!(got_closed, canonical(closed));
        assert!(got_max.iter().all(|p| got_closed.contains(p)));

        for p in all_patterns(n) {
            let s = to_itemset(&p);
            let m = is_maximal(&ds, &s, &c).unwrap();
            let cl = is_closed(&ds, &s, &c).unwrap();
            if m.holds() {
                assert!(cl.holds());
            }
            if let Some(w) = m.witness() {
                assert!(w.is_superset(&s) && w != &s && satisfies(&ds, w, &c).unwrap());
            }
            if let Some(w) = cl.witness() {
                assert_eq!(ds.frequency(w).unwrap(), ds.frequency(&s).unwrap());
            }
        }
    }
}

#[test]
fn maximal_frequent_sets_match_classic_definition() {
    let mut r = rng(14);
    for _ in 0..20 {
        let ds = random_dataset(&mut r, 7, 9, 0.5);
        let rows = rows_of(&ds);
        for s in 1..=3 {
            let c = ConstraintSet::new(vec![itemlab_core::ConstraintTerm::MinFreq(s)]);
            // frequent and no frequent one-item extension
            let expected: Vec<Vec<usize>> = all_patterns(7)
                .into_iter()
                .filter(|p| naive_freq(&rows, p) >= s)
                .filter(|p| {
                    (0..7).filter(|&i| !p[i]).all(|i| {
                        let mut q = p.clone();
                        q[i] = true;
                        naive_freq(&rows, &q) < s
                    })
                })
                .map(|p| mask_ids(&p))
                .collect();
            assert_eq!(
                ids_of(&enumerate_maximal(&ds, &c).unwrap()),
                canonical(expected)
            );
        }
    }
}

#[test]
fn confident_rule_search_agrees_with_exhaustive_placements() {
    let mut r = rng(15);
    let thresholds = [(1, 2), (2, 3), (1, 3), (3, 4), (1, 1)];
    for case in 0..60 {
        let n = 3 + case % 6;
        let ds = random_dataset(&mut r, n, 7, 0.55);
        let rows = rows_of(&ds);
        let z = case % n;
        let (num, den) = thresholds[case % thresholds.len()];
        let c = ConfidenceThreshold::new(num, den).unwrap();
        let found = exists_confident_rule_with_head_item(&ds, z, &c).unwrap();
        assert_eq!(
            found.is_some(),
            naive_confident_rule_exists(&rows, z, num, den),
            "case {case}"
        );
        if let Some(rule) = found {
            assert!(rule.head().contains(z));
            assert!(rule.body().is_disjoint(rule.head()));
            let conf = confidence(&ds, &rule).unwrap();
            assert!(conf.body > 0 && conf.meets(&c));
        }
    }
}

#[test]
fn solver_verdicts_match_exhaustive_evaluation() {
    for seed in 0..40u64 {
        let n = 3 + (seed as usize % 8);
        let m = 2 + (seed as usize % 12);
        let f = itemlab_core::sat::random_formula(n, m, seed, false).unwrap();
        let got = f.solve().unwrap();
        assert_eq!(got.is_some(), naive_sat(&f));
        match got {
            Some(a) => assert!(f.eval(&a).unwrap()),
            None => assert!((0..1u64 << n)
                .all(|i| !f.eval(&itemlab_core::Assignment::from_index(n, i)).unwrap())),
        }
        let p = itemlab_core::sat::random_formula(n, m, seed, true).unwrap();
        let got = p.solve_1in3().unwrap();
        assert_eq!(got.is_some(), naive_1in3(&p));
        if let Some(a) = got {
            assert!(p.eval_1in3(&a).unwrap() && p.eval(&a).unwrap());
        }
    }
}
