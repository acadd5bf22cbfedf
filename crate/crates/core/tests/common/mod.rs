//! Brute-force reference implementations over plain boolean matrices.
//!
//! Nothing here goes through the crate's bitsets or search code: patterns are
//! `Vec<bool>` masks, datasets are row-major boolean matrices, and every
//! question is answered by enumerating all candidates.

#![allow(dead_code)]

use itemlab_core::{
    ConstraintSet, ConstraintTerm, Itemset, QuantitativeDataset, TransactionDataset,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Mask = Vec<bool>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rows_of(ds: &TransactionDataset) -> Vec<Mask> {
    let n = ds.universe().len();
    ds.transactions()
        .iter()
        .map(|t| (0..n).map(|i| t.contains(i)).collect())
        .collect()
}

pub fn mask_ids(mask: &[bool]) -> Vec<usize> {
    mask.iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(i, _)| i)
        .collect()
}

pub fn to_itemset(mask: &[bool]) -> Itemset {
    Itemset::from_ids(mask.len(), mask_ids(mask)).unwrap()
}

pub fn mask_of(set: &Itemset) -> Mask {
    (0..set.width()).map(|i| set.contains(i)).collect()
}

/// Every non-empty mask over `n` items.
pub fn all_patterns(n: usize) -> Vec<Mask> {
    (1u64..1 << n)
        .map(|bits| (0..n).map(|i| bits >> i & 1 == 1).collect())
        .collect()
}

/// Sort id lists into canonical (lexicographic) order.
pub fn canonical(mut sets: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    sets.sort();
    sets
}

pub fn ids_of(sets: &[Itemset]) -> Vec<Vec<usize>> {
    sets.iter().map(Itemset::ids).collect()
}

pub fn contains(row: &[bool], pattern: &[bool]) -> bool {
    row.iter().zip(pattern).all(|(&r, &p)| r || !p)
}

pub fn naive_cover(rows: &[Mask], pattern: &[bool]) -> Vec<usize> {
    let mut out = Vec::new();
    for (j, row) in rows.iter().enumerate() {
        let mut ok = true;
        for i in 0..pattern.len() {
            if pattern[i] && !row[i] {
                ok = false;
            }
        }
        if ok {
            out.push(j);
        }
    }
    out
}

pub fn naive_freq(rows: &[Mask], pattern: &[bool]) -> usize {
    naive_cover(rows, pattern).len()
}

pub fn random_dataset(
    rng: &mut ChaCha8Rng,
    n: usize,
    m: usize,
    density: f64,
) -> TransactionDataset {
    let names: Vec<String> = (0..n).map(|i| format!("i{i}")).collect();
    let items: Vec<&str> = names.iter().map(String::as_str).collect();
    let rows: Vec<String> = (0..m)
        .map(|_| {
            (0..n)
                .filter(|_| rng.gen_bool(density))
                .map(|i| names[i].clone())
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect();
    TransactionDataset::from_rows(&items, &rows).unwrap()
}

pub fn random_quantitative(
    rng: &mut ChaCha8Rng,
    n: usize,
    m: usize,
    density: f64,
) -> QuantitativeDataset {
    let universe = itemlab_core::ItemUniverse::new((0..n).map(|i| format!("i{i}"))).unwrap();
    let cards = (0..m)
        .map(|_| {
            (0..n)
                .map(|_| {
                    if rng.gen_bool(density) {
                        rng.gen_range(1..=9)
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect();
    let utils = (0..n).map(|_| rng.gen_range(0..=20)).collect();
    QuantitativeDataset::new(universe, cards, utils).unwrap()
}

// ---- confidence ----------------------------------------------------------

/// Any rule (body, head) over all 3^n placements of items into body, head or
/// neither, with `z` in the head, non-empty body cover, and
/// `freq(body ∪ head) / freq(body) >= num/den`.
pub fn naive_confident_rule_exists(rows: &[Mask], z: usize, num: u64, den: u64) -> bool {
    let n = rows.first().map_or(0, Vec::len);
    let total = 3usize.pow(n as u32);
    for code in 0..total {
        let mut c = code;
        let mut body = vec![false; n];
        let mut union = vec![false; n];
        let mut head_has_z = false;
        for i in 0..n {
            match c % 3 {
                1 => {
                    body[i] = true;
                    union[i] = true;
                }
                2 => {
                    union[i] = true;
                    if i == z {
                        head_has_z = true;
                    }
                }
                _ => {}
            }
            c /= 3;
        }
        if !head_has_z {
            continue;
        }
        let fb = naive_freq(rows, &body) as u64;
        if fb == 0 {
            continue;
        }
        let fu = naive_freq(rows, &union) as u64;
        if fu * den >= num * fb {
            return true;
        }
    }
    false
}

// ---- utility -------------------------------------------------------------

pub fn naive_utility(qd: &QuantitativeDataset, pattern: &[bool]) -> u64 {
    let mut total = 0;
    for row in qd.cardinalities() {
        if pattern.iter().zip(row).any(|(&p, &v)| p && v == 0) {
            continue;
        }
        for (i, &p) in pattern.iter().enumerate() {
            if p {
                total += row[i] * qd.utilities()[i];
            }
        }
    }
    total
}

pub fn naive_high_utility(qd: &QuantitativeDataset, ut: u64) -> Vec<Vec<usize>> {
    let n = qd.universe().len();
    canonical(
        all_patterns(n)
            .into_iter()
            .filter(|p| naive_utility(qd, p) >= ut)
            .map(|p| mask_ids(&p))
            .collect(),
    )
}

// ---- theories ------------------------------------------------------------

pub fn naive_term(term: &ConstraintTerm, rows: &[Mask], p: &[bool]) -> bool {
    match term {
        ConstraintTerm::MinFreq(s) => naive_freq(rows, p) >= *s,
        ConstraintTerm::CardNeq { scope, k } => scope.ids().iter().filter(|&&i| p[i]).count() != *k,
        ConstraintTerm::OrEmptyNonempty { left, right } => {
            left.ids().iter().all(|&i| !p[i]) || right.ids().iter().any(|&i| p[i])
        }
    }
}

pub fn naive_satisfies(c: &ConstraintSet, rows: &[Mask], p: &[bool]) -> bool {
    c.terms().iter().all(|t| naive_term(t, rows, p))
}

pub fn naive_theory(c: &ConstraintSet, rows: &[Mask], n: usize) -> Vec<Mask> {
    all_patterns(n)
        .into_iter()
        .filter(|p| naive_satisfies(c, rows, p))
        .collect()
}

fn strict_superset(q: &[bool], p: &[bool]) -> bool {
    contains(q, p) && q != p
}

pub fn naive_is_maximal(c: &ConstraintSet, rows: &[Mask], n: usize, p: &[bool]) -> Option<bool> {
    if !naive_satisfies(c, rows, p) {
        return None;
    }
    Some(
        !all_patterns(n)
            .iter()
            .any(|q| strict_superset(q, p) && naive_satisfies(c, rows, q)),
    )
}

pub fn naive_is_closed(c: &ConstraintSet, rows: &[Mask], n: usize, p: &[bool]) -> Option<bool> {
    if !naive_satisfies(c, rows, p) {
        return None;
    }
    let f = naive_freq(rows, p);
    Some(
        !all_patterns(n).iter().any(|q| {
            strict_superset(q, p) && naive_freq(rows, q) == f && naive_satisfies(c, rows, q)
        }),
    )
}

/// Random constraint set: one frequency bound plus a few cardinality and
/// disjunction terms over random scopes.
pub fn random_constraints(rng: &mut ChaCha8Rng, n: usize, max_freq: usize) -> ConstraintSet {
    let scope =
        |rng: &mut ChaCha8Rng| Itemset::from_ids(n, (0..n).filter(|_| rng.gen_bool(0.35))).unwrap();
    let mut terms = vec![ConstraintTerm::MinFreq(rng.gen_range(1..=max_freq.max(1)))];
    for _ in 0..rng.gen_range(0..=2) {
        let s = scope(rng);
        let k = rng.gen_range(0..=s.len().max(1));
        terms.push(ConstraintTerm::CardNeq { scope: s, k });
    }
    for _ in 0..rng.gen_range(0..=2) {
        terms.push(ConstraintTerm::OrEmptyNonempty {
            left: scope(rng),
            right: scope(rng),
        });
    }
    ConstraintSet::new(terms)
}

// ---- SAT -----------------------------------------------------------------

pub fn naive_sat(f: &itemlab_core::CnfFormula) -> bool {
    let n = f.num_vars();
    (0u64..1 << n).any(|bits| {
        f.clauses().iter().all(|c| {
            c.iter().any(|l| {
                let v = bits >> (l.var() - 1) & 1 == 1;
                v == l.is_positive()
            })
        })
    })
}

pub fn naive_1in3(f: &itemlab_core::CnfFormula) -> bool {
    let n = f.num_vars();
    (0u64..1 << n).any(|bits| {
        f.clauses().iter().all(|c| {
            let mut vars: Vec<usize> = c.iter().map(|l| l.var()).collect();
            vars.sort();
            vars.dedup();
            vars.iter().filter(|&&v| bits >> (v - 1) & 1 == 1).count() == 1
        })
    })
}
