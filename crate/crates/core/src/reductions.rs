//! Gadget constructions mapping 3-CNF formulas to mining instances, with the
//! witness mappings in both directions.
//!
//! * [`reduce_confrule`]: 3-SAT to "confident rule with `z` in the head" at
//!   confidence 1/2, over items `pos<i>`, `neg<i>`, `z`.
//! * [`reduce_hui`]: positive 1-in-3-SAT to "itemset with utility at least
//!   3nm²", over items `p<i>` with unit utilities.
//! * [`reduce_maxclosed`]: 3-UNSAT to "`{z}` is maximal / closed" for a
//!   constrained theory, over items `pos<i>`, `neg<i>`, `cl<j>`, `z`.
//!
//! Backward mappings validate the witness and refuse malformed ones.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::dataset::{read_dataset, write_dataset, ItemUniverse, TransactionDataset};
use crate::error::{Error, Result};
use crate::itemset::Itemset;
use crate::rules::{confidence, AssociationRule, ConfidenceThreshold};
use crate::sat::{Assignment, CnfFormula, Literal};
use crate::theory::{
    read_constraints, satisfies, write_constraints, ConstraintSet, ConstraintTerm,
};
use crate::utility::{read_quantitative, write_quantitative, QuantitativeDataset};

pub const DATASET_FILE: &str = "dataset.txt";
pub const UTILITIES_FILE: &str = "utilities.tsv";
pub const CONSTRAINTS_FILE: &str = "constraints.sexp";
pub const TARGET_FILE: &str = "target.txt";
pub const META_FILE: &str = "meta.txt";

fn item(universe: &ItemUniverse, name: &str) -> usize {
    universe.id(name).expect("gadget item exists")
}

fn literal_item(lit: Literal) -> String {
    if lit.is_positive() {
        format!("pos{}", lit.var())
    } else {
        format!("neg{}", lit.var())
    }
}

fn without(universe: &ItemUniverse, names: &[&str]) -> Itemset {
    let mut t = universe.full_set();
    for n in names {
        t.remove(item(universe, n));
    }
    t
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}

/// `key: value` lines describing an emitted gadget.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GadgetMeta(pub BTreeMap<String, String>);

impl GadgetMeta {
    fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.0.insert(key.to_string(), value.to_string());
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.0.get(key).map(String::as_str)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.0 {
            let _ = writeln!(out, "{k}: {v}");
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once(':')
                .ok_or_else(|| Error::parse(i + 1, "expected `key: value`"))?;
            map.insert(k.trim().to_string(), v.trim().to_string());
        }
        Ok(GadgetMeta(map))
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        GadgetMeta::parse(&text)
    }
}

// ---------------------------------------------------------------------------
// Confident rules

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfRuleInstance {
    pub formula: CnfFormula,
    pub dataset: TransactionDataset,
    pub head_item: usize,
    pub threshold: ConfidenceThreshold,
}

pub fn confrule_universe(n: usize) -> ItemUniverse {
    let names = (1..=n)
        .flat_map(|i| [format!("pos{i}"), format!("neg{i}")])
        .chain(std::iter::once("z".to_string()));
    ItemUniverse::new(names).expect("gadget names are valid")
}

/// Builds the `5n + m` transaction dataset: `n` copies of `All \ {z}`; per
/// variable `All \ {pos_i}`, `All \ {neg_i}` and two copies of
/// `All \ {pos_i, neg_i, z}`; then one `All \ {items of the clause, z}` per
/// clause.
pub fn reduce_confrule(formula: &CnfFormula) -> ConfRuleInstance {
    let n = formula.num_vars();
    let u = confrule_universe(n);
    let mut rows = Vec::with_capacity(5 * n + formula.num_clauses());
    for _ in 0..n {
        rows.push(without(&u, &["z"]));
    }
    for i in 1..=n {
        let (pos, neg) = (format!("pos{i}"), format!("neg{i}"));
        rows.push(without(&u, &[&pos]));
        rows.push(without(&u, &[&neg]));
        rows.push(without(&u, &[&pos, &neg, "z"]));
        rows.push(without(&u, &[&pos, &neg, "z"]));
    }
    for clause in formula.clauses() {
        let names: Vec<String> = clause.iter().map(|&l| literal_item(l)).collect();
        let mut drop: Vec<&str> = names.iter().map(String::as_str).collect();
        drop.push("z");
        rows.push(without(&u, &drop));
    }
    let head_item = item(&u, "z");
    ConfRuleInstance {
        formula: formula.clone(),
        dataset: TransactionDataset::new(u, rows).expect("rows match universe"),
        head_item,
        threshold: ConfidenceThreshold::HALF,
    }
}

impl ConfRuleInstance {
    pub fn meta(&self) -> GadgetMeta {
        let (n, m) = (self.formula.num_vars(), self.formula.num_clauses());
        GadgetMeta::default()
            .with("problem", "confrule")
            .with("n", n)
            .with("m", m)
            .with("head_item", "z")
            .with("threshold", self.threshold)
            .with("transactions", self.dataset.len())
            .with("size_formula", format!("5n+m = {}", 5 * n + m))
    }

    pub fn write_dir(&self, dir: impl AsRef<Path>) -> Result<()> {
        let dir = dir.as_ref();
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        write_dataset(&self.dataset, dir.join(DATASET_FILE))?;
        write_file(&dir.join(META_FILE), &self.meta().to_text())
    }
}

/// Body takes `pos_i` when `v_i` is true and `neg_i` otherwise; head is `{z}`.
pub fn confrule_forward(
    instance: &ConfRuleInstance,
    assignment: &Assignment,
) -> Result<AssociationRule> {
    if !instance.formula.eval(assignment)? {
        return Err(Error::Precondition(
            "assignment does not satisfy the formula".into(),
        ));
    }
    let u = instance.dataset.universe();
    let mut body = u.empty_set();
    for i in 1..=instance.formula.num_vars() {
        let name = if assignment.value(i) {
            format!("pos{i}")
        } else {
            format!("neg{i}")
        };
        body.insert(item(u, &name))?;
    }
    let mut head = u.empty_set();
    head.insert(instance.head_item)?;
    AssociationRule::new(body, head)
}

/// `v_i` is true iff `pos_i` is in the body. The rule must have `z` in its
/// head, exactly one of `pos_i`, `neg_i` in its body for every `i`, and
/// confidence at least the instance threshold.
pub fn confrule_backward(
    instance: &ConfRuleInstance,
    rule: &AssociationRule,
) -> Result<Assignment> {
    let u = instance.dataset.universe();
    u.check(rule.body())?;
    if !rule.head().contains(instance.head_item) {
        return Err(Error::Witness("rule head does not contain z".into()));
    }
    let mut values = Vec::with_capacity(instance.formula.num_vars());
    for i in 1..=instance.formula.num_vars() {
        let pos = rule.body().contains(item(u, &format!("pos{i}")));
        let neg = rule.body().contains(item(u, &format!("neg{i}")));
        if pos == neg {
            return Err(Error::Witness(format!(
                "variable {i}: body must contain exactly one of pos{i}, neg{i}"
            )));
        }
        values.push(pos);
    }
    let conf = confidence(&instance.dataset, rule)?;
    if !conf.meets(&instance.threshold) {
        return Err(Error::Witness(format!(
            "rule confidence {conf} is below {}",
            instance.threshold
        )));
    }
    Ok(Assignment::new(values))
}

// ---------------------------------------------------------------------------
// High utility

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HuiInstance {
    pub formula: CnfFormula,
    pub qd: QuantitativeDataset,
    pub threshold: u64,
}

/// Three transactions per clause over items `p1..pn` with unit utilities.
/// The `k`-th transaction of a clause has cardinality `3nm` for the clause's
/// `k`-th variable, 0 for its other two, and 1 for every other item.
pub fn reduce_hui(formula: &CnfFormula) -> Result<HuiInstance> {
    if !formula.is_positive() {
        return Err(Error::Precondition(
            "utility gadget needs a positive formula".into(),
        ));
    }
    if !formula.has_distinct_clause_vars() {
        return Err(Error::Precondition(
            "utility gadget needs three distinct variables per clause".into(),
        ));
    }
    let (n, m) = (formula.num_vars() as u64, formula.num_clauses() as u64);
    let overflow = || Error::Overflow("utility gadget threshold");
    let big = 3u64
        .checked_mul(n)
        .and_then(|x| x.checked_mul(m))
        .ok_or_else(overflow)?;
    let threshold = big.checked_mul(m).ok_or_else(overflow)?;

    let universe =
        ItemUniverse::new((1..=formula.num_vars()).map(|i| format!("p{i}"))).expect("valid names");
    let mut rows = Vec::with_capacity(3 * formula.num_clauses());
    for clause in formula.clauses() {
        for hot in clause {
            let mut row = vec![1u64; formula.num_vars()];
            for lit in clause {
                row[lit.var() - 1] = 0;
            }
            row[hot.var() - 1] = big;
            rows.push(row);
        }
    }
    let utilities = vec![1u64; formula.num_vars()];
    Ok(HuiInstance {
        formula: formula.clone(),
        qd: QuantitativeDataset::new(universe, rows, utilities)?,
        threshold,
    })
}

impl HuiInstance {
    pub fn meta(&self) -> GadgetMeta {
        let (n, m) = (self.formula.num_vars(), self.formula.num_clauses());
        GadgetMeta::default()
            .with("problem", "hui")
            .with("n", n)
            .with("m", m)
            .with("threshold", self.threshold)
            .with("transactions", self.qd.len())
            .with("size_formula", format!("3m = {}", 3 * m))
    }

    pub fn write_dir(&self, dir: impl AsRef<Path>) -> Result<()> {
        let dir = dir.as_ref();
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        write_quantitative(&self.qd, dir.join(DATASET_FILE), dir.join(UTILITIES_FILE))?;
        write_file(&dir.join(META_FILE), &self.meta().to_text())
    }
}

/// `p_i` is in the pattern iff `v_i` is true.
pub fn hui_forward(instance: &HuiInstance, assignment: &Assignment) -> Result<Itemset> {
    if !instance.formula.eval_1in3(assignment)? {
        return Err(Error::Precondition(
            "assignment is not a 1-in-3 solution".into(),
        ));
    }
    let pattern = Itemset::from_ids(
        instance.formula.num_vars(),
        (1..=instance.formula.num_vars())
            .filter(|&i| assignment.value(i))
            .map(|i| i - 1),
    )?;
    if pattern.is_empty() {
        return Err(Error::EmptyPattern);
    }
    Ok(pattern)
}

/// Sets exactly the variables of the pattern's items to true. The pattern
/// must reach the instance threshold.
pub fn hui_backward(instance: &HuiInstance, pattern: &Itemset) -> Result<Assignment> {
    let utility = instance.qd.utility(pattern)?;
    if utility < instance.threshold {
        return Err(Error::Witness(format!(
            "pattern utility {utility} is below {}",
            instance.threshold
        )));
    }
    Ok(Assignment::new(
        (0..instance.formula.num_vars())
            .map(|i| pattern.contains(i))
            .collect(),
    ))
}

// ---------------------------------------------------------------------------
// Maximal / closed

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxClosedInstance {
    pub formula: CnfFormula,
    pub dataset: TransactionDataset,
    pub constraints: ConstraintSet,
    pub target: Itemset,
}

pub fn maxclosed_universe(n: usize, m: usize) -> ItemUniverse {
    let names = (1..=n)
        .map(|i| format!("pos{i}"))
        .chain((1..=n).map(|i| format!("neg{i}")))
        .chain((1..=m).map(|j| format!("cl{j}")))
        .chain(std::iter::once("z".to_string()));
    ItemUniverse::new(names).expect("gadget names are valid")
}

/// One transaction `All \ {cl_j}` per clause, and the constraints
/// `|P ∩ {pos_i, neg_i}| != 2` per variable, `P ∩ vars = ∅ ∨ P ∩ {cl_j,
/// items of clause j} ≠ ∅` per clause, then `freq(P) >= m`.
pub fn reduce_maxclosed(formula: &CnfFormula) -> MaxClosedInstance {
    let (n, m) = (formula.num_vars(), formula.num_clauses());
    let u = maxclosed_universe(n, m);
    let rows = (1..=m).map(|j| without(&u, &[&format!("cl{j}")])).collect();

    let mut constraints = ConstraintSet::default();
    for i in 1..=n {
        let scope = u
            .itemset([format!("pos{i}"), format!("neg{i}")])
            .expect("gadget items");
        constraints.push(ConstraintTerm::CardNeq { scope, k: 2 });
    }
    let variable_items = u
        .itemset((1..=n).flat_map(|i| [format!("pos{i}"), format!("neg{i}")]))
        .expect("gadget items");
    for (j, clause) in formula.clauses().iter().enumerate() {
        let names =
            std::iter::once(format!("cl{}", j + 1)).chain(clause.iter().map(|&l| literal_item(l)));
        constraints.push(ConstraintTerm::OrEmptyNonempty {
            left: variable_items.clone(),
            right: u.itemset(names).expect("gadget items"),
        });
    }
    constraints.push(ConstraintTerm::MinFreq(m));

    let target = u.itemset(["z"]).expect("gadget items");
    MaxClosedInstance {
        formula: formula.clone(),
        dataset: TransactionDataset::new(u, rows).expect("rows match universe"),
        constraints,
        target,
    }
}

impl MaxClosedInstance {
    pub fn meta(&self) -> GadgetMeta {
        let (n, m) = (self.formula.num_vars(), self.formula.num_clauses());
        GadgetMeta::default()
            .with("problem", "maxclosed")
            .with("n", n)
            .with("m", m)
            .with("threshold", m)
            .with("transactions", self.dataset.len())
            .with("constraints", self.constraints.len())
            .with(
                "size_formula",
                format!("m = {m}; n+m+1 = {} constraints", n + m + 1),
            )
    }

    pub fn write_dir(&self, dir: impl AsRef<Path>) -> Result<()> {
        let dir = dir.as_ref();
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        let u = self.dataset.universe();
        write_dataset(&self.dataset, dir.join(DATASET_FILE))?;
        write_constraints(&self.constraints, u, dir.join(CONSTRAINTS_FILE))?;
        write_file(
            &dir.join(TARGET_FILE),
            &format!("{}\n", u.tokens(&self.target).join(" ")),
        )?;
        write_file(&dir.join(META_FILE), &self.meta().to_text())
    }
}

/// `{z}` plus `pos_i` for true and `neg_i` for false variables.
pub fn maxclosed_forward(instance: &MaxClosedInstance, assignment: &Assignment) -> Result<Itemset> {
    if !instance.formula.eval(assignment)? {
        return Err(Error::Precondition(
            "assignment does not satisfy the formula".into(),
        ));
    }
    let u = instance.dataset.universe();
    let mut p = instance.target.clone();
    for i in 1..=instance.formula.num_vars() {
        let name = if assignment.value(i) {
            format!("pos{i}")
        } else {
            format!("neg{i}")
        };
        p.insert(item(u, &name))?;
    }
    Ok(p)
}

/// `v_i` is true iff `pos_i` is in the pattern; variables with neither item
/// default to false. The pattern must be a strict superset of the target
/// satisfying every constraint.
pub fn maxclosed_backward(instance: &MaxClosedInstance, pattern: &Itemset) -> Result<Assignment> {
    let u = instance.dataset.universe();
    u.check(pattern)?;
    if !(pattern.is_superset(&instance.target) && pattern.len() > instance.target.len()) {
        return Err(Error::Witness(format!(
            "{} is not a strict superset of {}",
            u.format(pattern),
            u.format(&instance.target)
        )));
    }
    if !satisfies(&instance.dataset, pattern, &instance.constraints)? {
        return Err(Error::Witness(format!(
            "{} violates the constraints",
            u.format(pattern)
        )));
    }
    Ok(Assignment::new(
        (1..=instance.formula.num_vars())
            .map(|i| pattern.contains(item(u, &format!("pos{i}"))))
            .collect(),
    ))
}

/// Reads a `dataset.txt` / `constraints.sexp` / `target.txt` triple.
pub fn read_maxclosed_files(
    dataset: impl AsRef<Path>,
    constraints: impl AsRef<Path>,
    target: impl AsRef<Path>,
) -> Result<(TransactionDataset, ConstraintSet, Itemset)> {
    let ds = read_dataset(dataset)?;
    let c = read_constraints(constraints, ds.universe())?;
    let tp = target.as_ref();
    let text = std::fs::read_to_string(tp).map_err(|e| Error::io(tp, e))?;
    let t = ds.universe().parse_itemset(text.trim())?;
    Ok((ds, c, t))
}

pub fn read_hui_files(
    dataset: impl AsRef<Path>,
    utilities: impl AsRef<Path>,
) -> Result<QuantitativeDataset> {
    read_quantitative(dataset, utilities)
}
