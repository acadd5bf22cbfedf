//! Exact values on the small reference instances and the shipped fixtures.

mod common;

use std::path::PathBuf;

use itemlab_core::reductions::{
    confrule_backward, confrule_forward, hui_backward, hui_forward, reduce_confrule, reduce_hui,
};
use itemlab_core::rules::{confidence, exists_confident_rule_with_head_item, is_confident};
use itemlab_core::samples::{basket_dataset, basket_quantities, two_clause_positive_formula};
use itemlab_core::sat::read_dimacs;
use itemlab_core::theory::{enumerate_maximal, is_closed, is_maximal, theory};
use itemlab_core::utility::read_quantitative;
use itemlab_core::{
    read_dataset, Assignment, BorderStatus, ConfidenceThreshold, ConstraintSet, ConstraintTerm,
    Error, Pruning,
};

use common::*;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

#[test]
fn basket_fixture_matches_builtin() {
    assert_eq!(
        read_dataset(fixture("basket.txt")).unwrap(),
        basket_dataset()
    );
    let qd = read_quantitative(
        fixture("basket_quantities.txt"),
        fixture("basket_utilities.tsv"),
    )
    .unwrap();
    assert_eq!(qd, basket_quantities());
}

#[test]
fn duplicate_token_fixture_fails_on_its_line() {
    match read_dataset(fixture("duplicate_token.txt")) {
        Err(Error::Parse { line, msg }) => {
            assert_eq!(line, 3);
            assert!(msg.contains("duplicate"));
        }
        other => panic!("expected parse error, got {other:?}"),
    }
}

#[test]
fn basket_frequencies_and_rules() {
    let ds = basket_dataset();
    let u = ds.universe();
    let ce = u.parse_itemset("C E").unwrap();
    assert_eq!(ds.cover(&ce).unwrap(), vec![2, 3, 4]);
    let labels: Vec<String> = ds
        .cover(&ce)
        .unwrap()
        .iter()
        .map(|&j| ds.label(j))
        .collect();
    assert_eq!(labels, ["t3", "t4", "t5"]);
    assert_eq!(ds.frequency(&ce).unwrap(), 3);
    assert!(ds.is_frequent(&ce, 2).unwrap());

    let rule = itemlab_core::AssociationRule::new(
        u.parse_itemset("B").unwrap(),
        u.parse_itemset("C").unwrap(),
    )
    .unwrap();
    let conf = confidence(&ds, &rule).unwrap();
    assert_eq!(conf.reduced(), (3, 4));
    assert!(is_confident(&ds, &rule, &"60%".parse().unwrap()).unwrap());
}

#[test]
fn basket_utilities() {
    let qd = basket_quantities();
    let s = |t: &str| qd.universe().parse_itemset(t).unwrap();
    assert_eq!(qd.utility_in_transaction(&s("A C"), 0).unwrap(), 0);
    assert_eq!(qd.utility_in_transaction(&s("A C"), 1).unwrap(), 196);
    assert_eq!(qd.utility_in_transaction(&s("A C"), 4).unwrap(), 282);
    assert_eq!(qd.utility(&s("A C")).unwrap(), 696);
    assert!(qd.is_high_utility(&s("A C"), 660).unwrap());
    assert_eq!(qd.utility(&s("A C E")).unwrap(), 670);
    assert_eq!(naive_utility(&qd, &mask_of(&s("A C E"))), 670);

    let listed = qd.enumerate_high_utility(660, Pruning::Twu).unwrap();
    assert_eq!(ids_of(&listed), naive_high_utility(&qd, 660));
    assert!(listed.contains(&s("A C")));
    assert!(listed.contains(&s("A C E")));
}

#[test]
fn basket_borders() {
    let ds = basket_dataset();
    let c = ConstraintSet::new(vec![ConstraintTerm::MinFreq(2)]);
    let s = |t: &str| ds.universe().parse_itemset(t).unwrap();
    assert!(matches!(
        is_closed(&ds, &s("C E"), &c).unwrap(),
        BorderStatus::Refuted(_)
    ));
    assert!(is_closed(&ds, &s("B C E"), &c).unwrap().holds());
    assert!(matches!(
        is_maximal(&ds, &s("B C E"), &c).unwrap(),
        BorderStatus::Refuted(_)
    ));
    assert!(is_maximal(&ds, &s("A B C E"), &c).unwrap().holds());
    let th = theory(&ds, &c).unwrap();
    assert!(th.contains(&s("B C E")) && th.contains(&s("A B C E")));
}

#[test]
fn filtering_maximal_frequent_sets_is_not_mining_the_theory() {
    // itemsets without A that occur at least twice
    let ds = basket_dataset();
    let u = ds.universe();
    let no_a = ConstraintTerm::CardNeq {
        scope: u.parse_itemset("A").unwrap(),
        k: 1,
    };
    let freq_only = ConstraintSet::new(vec![ConstraintTerm::MinFreq(2)]);
    let both = ConstraintSet::new(vec![ConstraintTerm::MinFreq(2), no_a.clone()]);

    let rows = rows_of(&ds);
    let mfis: Vec<Mask> = naive_theory(&freq_only, &rows, 5)
        .into_iter()
        .filter(|p| naive_is_maximal(&freq_only, &rows, 5, p) == Some(true))
        .collect();
    let filtered: Vec<Vec<usize>> = mfis
        .iter()
        .filter(|p| naive_term(&no_a, &rows, p))
        .map(|p| mask_ids(p))
        .collect();
    let mined = ids_of(&enumerate_maximal(&ds, &both).unwrap());
    assert!(filtered.is_empty());
    assert_eq!(mined, vec![vec![1, 2, 4]]); // {B C E}
    assert_ne!(mined, filtered);
}

#[test]
fn confrule_gadget_matches_fixture() {
    let f = read_dimacs(fixture("v1_nv2_v3.cnf")).unwrap();
    let inst = reduce_confrule(&f);
    let golden = read_dataset(fixture("confrule_v1_nv2_v3.txt")).unwrap();
    assert_eq!(golden.len(), 16);
    assert_eq!(inst.dataset, golden);

    let golden_text = std::fs::read_to_string(fixture("confrule_v1_nv2_v3.txt")).unwrap();
    let body: String = golden_text
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| format!("{l}\n"))
        .collect();
    assert_eq!(inst.dataset.to_text(), body);
}

#[test]
fn confrule_fixture_witness() {
    let golden = read_dataset(fixture("confrule_v1_nv2_v3.txt")).unwrap();
    let rows = rows_of(&golden);
    let u = golden.universe();
    let body = mask_of(&u.parse_itemset("pos1 neg2 neg3").unwrap());
    let union = mask_of(&u.parse_itemset("pos1 neg2 neg3 z").unwrap());
    assert_eq!(
        (naive_freq(&rows, &union), naive_freq(&rows, &body)),
        (3, 6)
    );

    let inst = reduce_confrule(&read_dimacs(fixture("v1_nv2_v3.cnf")).unwrap());
    let rule = confrule_forward(&inst, &Assignment::new(vec![true, false, false])).unwrap();
    let conf = confidence(&golden, &rule).unwrap();
    assert_eq!((conf.joint, conf.body), (3, 6));
    assert!(conf.meets(&ConfidenceThreshold::HALF));
    assert_eq!(
        confrule_backward(&inst, &rule).unwrap().values(),
        &[true, false, false]
    );

    let found = exists_confident_rule_with_head_item(&golden, inst.head_item, &inst.threshold)
        .unwrap()
        .expect("satisfiable formula has a witness");
    let a = confrule_backward(&inst, &found).unwrap();
    assert!(inst.formula.eval(&a).unwrap());
}

#[test]
fn unsat_confrule_gadget_has_no_witness() {
    let f = read_dimacs(fixture("unsat_full_sign.cnf")).unwrap();
    assert_eq!(f.solve().unwrap(), None);
    let inst = reduce_confrule(&f);
    assert_eq!(inst.dataset.len(), 5 * 3 + 8);
    assert_eq!(
        exists_confident_rule_with_head_item(&inst.dataset, inst.head_item, &inst.threshold)
            .unwrap(),
        None
    );
    assert!(!naive_confident_rule_exists(
        &rows_of(&inst.dataset),
        inst.head_item,
        1,
        2
    ));
}

#[test]
fn hui_gadget_matches_fixture() {
    let f = read_dimacs(fixture("positive_two_clause.cnf")).unwrap();
    assert_eq!(f, two_clause_positive_formula());
    let inst = reduce_hui(&f).unwrap();
    let golden = read_quantitative(
        fixture("hui_two_clause.txt"),
        fixture("hui_two_clause_utilities.tsv"),
    )
    .unwrap();
    assert_eq!(inst.qd, golden);
    assert_eq!(inst.threshold, 3 * 5 * 2 * 2);

    let p = hui_forward(
        &inst,
        &Assignment::new(vec![true, false, false, true, false]),
    )
    .unwrap();
    assert_eq!(naive_utility(&golden, &mask_of(&p)), 62);
    assert!(hui_backward(&inst, &p).is_ok());

    // every high-utility itemset of the gadget is a 1-in-3 solution and back
    let listed = inst
        .qd
        .enumerate_high_utility(inst.threshold, Pruning::None)
        .unwrap();
    let solutions: Vec<Vec<usize>> = canonical(
        (0u64..1 << 5)
            .map(|bits| Assignment::from_index(5, bits))
            .filter(|a| f.eval_1in3(a).unwrap())
            .map(|a| (0..5).filter(|&i| a.values()[i]).collect())
            .collect(),
    );
    assert_eq!(ids_of(&listed), solutions);
    assert!(listed.contains(&inst.qd.universe().parse_itemset("p1 p4").unwrap()));
}
