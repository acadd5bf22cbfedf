//! Constraint terms over itemsets, the theory they define on a dataset, and
//! exhaustive maximality / closedness checks.
//!
//! Constraint files hold one s-expression term per line:
//!
//! ```text
//! (minfreq 2)
//! (card-neq (pos1 neg1) 2)
//! (or-empty-nonempty (pos1 neg1 pos2 neg2) (cl1 pos1 neg2 pos3))
//! ```

use std::fmt;
use std::path::Path;

use itertools::Itertools;

use crate::dataset::{content_lines, ItemUniverse, TransactionDataset};
use crate::error::{Error, Result};
use crate::itemset::{walk_canonical, Itemset, Visit};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConstraintTerm {
    /// `freq(P) >= s`
    MinFreq(usize),
    /// `|P ∩ scope| != k`
    CardNeq { scope: Itemset, k: usize },
    /// `P ∩ left = ∅  ∨  P ∩ right ≠ ∅`
    OrEmptyNonempty { left: Itemset, right: Itemset },
}

impl ConstraintTerm {
    pub fn holds(&self, dataset: &TransactionDataset, pattern: &Itemset) -> bool {
        match self {
            ConstraintTerm::MinFreq(s) => dataset.support(pattern) >= *s,
            ConstraintTerm::CardNeq { scope, k } => pattern.intersection(scope).len() != *k,
            ConstraintTerm::OrEmptyNonempty { left, right } => {
                pattern.is_disjoint(left) || !pattern.is_disjoint(right)
            }
        }
    }

    fn check(&self, universe: &ItemUniverse) -> Result<()> {
        match self {
            ConstraintTerm::MinFreq(_) => Ok(()),
            ConstraintTerm::CardNeq { scope, .. } => universe.check(scope),
            ConstraintTerm::OrEmptyNonempty { left, right } => {
                universe.check(left)?;
                universe.check(right)
            }
        }
    }

    pub fn format(&self, universe: &ItemUniverse) -> String {
        let list = |s: &Itemset| format!("({})", universe.tokens(s).join(" "));
        match self {
            ConstraintTerm::MinFreq(s) => format!("(minfreq {s})"),
            ConstraintTerm::CardNeq { scope, k } => format!("(card-neq {} {k})", list(scope)),
            ConstraintTerm::OrEmptyNonempty { left, right } => {
                format!("(or-empty-nonempty {} {})", list(left), list(right))
            }
        }
    }
}

/// Conjunction of constraint terms.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ConstraintSet {
    terms: Vec<ConstraintTerm>,
}

impl ConstraintSet {
    pub fn new(terms: Vec<ConstraintTerm>) -> Self {
        ConstraintSet { terms }
    }

    pub fn terms(&self) -> &[ConstraintTerm] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn push(&mut self, term: ConstraintTerm) {
        self.terms.push(term);
    }

    fn check(&self, universe: &ItemUniverse) -> Result<()> {
        self.terms.iter().try_for_each(|t| t.check(universe))
    }

    fn holds(&self, dataset: &TransactionDataset, pattern: &Itemset) -> bool {
        self.terms.iter().all(|t| t.holds(dataset, pattern))
    }

    /// Largest frequency threshold among the terms; every theory member has
    /// at least this frequency.
    fn min_frequency(&self) -> usize {
        self.terms
            .iter()
            .filter_map(|t| match t {
                ConstraintTerm::MinFreq(s) => Some(*s),
                _ => None,
            })
            .max()
            .unwrap_or(0)
    }

    pub fn to_text(&self, universe: &ItemUniverse) -> String {
        self.terms
            .iter()
            .map(|t| t.format(universe) + "\n")
            .collect()
    }

    pub fn parse(text: &str, universe: &ItemUniverse) -> Result<Self> {
        let mut terms = Vec::new();
        for (lineno, line) in content_lines(text) {
            if line.trim().is_empty() {
                continue;
            }
            terms.push(parse_term(line, universe).map_err(|msg| Error::parse(lineno, msg))?);
        }
        Ok(ConstraintSet { terms })
    }
}

pub fn read_constraints(path: impl AsRef<Path>, universe: &ItemUniverse) -> Result<ConstraintSet> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    ConstraintSet::parse(&text, universe)
}

pub fn write_constraints(
    constraints: &ConstraintSet,
    universe: &ItemUniverse,
    path: impl AsRef<Path>,
) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, constraints.to_text(universe)).map_err(|e| Error::io(path, e))
}

#[derive(Debug, PartialEq)]
enum Sexp<'a> {
    Atom(&'a str),
    List(Vec<Sexp<'a>>),
}

fn parse_sexp(line: &str) -> std::result::Result<Sexp<'_>, String> {
    let mut tokens = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch == '(' || ch == ')' || ch.is_whitespace() {
            if let Some(s) = start.take() {
                tokens.push(&line[s..i]);
            }
            if !ch.is_whitespace() {
                tokens.push(&line[i..i + 1]);
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        tokens.push(&line[s..]);
    }

    fn form<'a>(toks: &[&'a str], pos: &mut usize) -> std::result::Result<Sexp<'a>, String> {
        match toks.get(*pos) {
            None => Err("unexpected end of term".into()),
            Some(&")") => Err("unexpected `)`".into()),
            Some(&"(") => {
                *pos += 1;
                let mut items = Vec::new();
                while toks.get(*pos) != Some(&")") {
                    if *pos >= toks.len() {
                        return Err("unbalanced `(`".into());
                    }
                    items.push(form(toks, pos)?);
                }
                *pos += 1;
                Ok(Sexp::List(items))
            }
            Some(atom) => {
                *pos += 1;
                Ok(Sexp::Atom(atom))
            }
        }
    }

    let mut pos = 0;
    let out = form(&tokens, &mut pos)?;
    if pos != tokens.len() {
        return Err("trailing input after term".into());
    }
    Ok(out)
}

fn parse_term(line: &str, universe: &ItemUniverse) -> std::result::Result<ConstraintTerm, String> {
    let number = |s: &Sexp| match s {
        Sexp::Atom(a) => a
            .parse::<usize>()
            .map_err(|_| format!("expected integer, got {a:?}")),
        Sexp::List(_) => Err("expected integer, got list".to_string()),
    };
    let scope = |s: &Sexp| match s {
        Sexp::List(items) => {
            let mut set = universe.empty_set();
            for item in items {
                let Sexp::Atom(tok) = item else {
                    return Err("nested list in item scope".to_string());
                };
                let id = universe
                    .id(tok)
                    .ok_or_else(|| format!("unknown item {tok:?}"))?;
                set.insert(id).map_err(|e| e.to_string())?;
            }
            Ok(set)
        }
        Sexp::Atom(a) => Err(format!("expected item list, got {a:?}")),
    };
    let Sexp::List(parts) = parse_sexp(line)? else {
        return Err("term must be a parenthesised list".into());
    };
    match parts.as_slice() {
        [Sexp::Atom("minfreq"), s] => Ok(ConstraintTerm::MinFreq(number(s)?)),
        [Sexp::Atom("card-neq"), sc, k] => Ok(ConstraintTerm::CardNeq {
            scope: scope(sc)?,
            k: number(k)?,
        }),
        [Sexp::Atom("or-empty-nonempty"), l, r] => Ok(ConstraintTerm::OrEmptyNonempty {
            left: scope(l)?,
            right: scope(r)?,
        }),
        [Sexp::Atom(name), ..] => Err(format!("unknown or malformed term {name:?}")),
        _ => Err("empty term".into()),
    }
}

pub fn satisfies(
    dataset: &TransactionDataset,
    pattern: &Itemset,
    constraints: &ConstraintSet,
) -> Result<bool> {
    dataset.universe().check_pattern(pattern)?;
    constraints.check(dataset.universe())?;
    Ok(constraints.holds(dataset, pattern))
}

/// Every non-empty itemset satisfying all terms, in canonical order.
pub fn theory(dataset: &TransactionDataset, constraints: &ConstraintSet) -> Result<Vec<Itemset>> {
    constraints.check(dataset.universe())?;
    let min_freq = constraints.min_frequency();
    let width = dataset.universe().len();
    let items: Vec<usize> = (0..width).collect();
    let mut out = Vec::new();
    walk_canonical(width, &items, &mut |p| {
        if min_freq > 0 && dataset.support(p) < min_freq {
            return Visit::Prune;
        }
        if constraints.holds(dataset, p) {
            out.push(p.clone());
        }
        Visit::Descend
    });
    Ok(out)
}

/// Outcome of a maximality or closedness check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BorderStatus {
    /// The pattern is not in the theory, so the question does not apply.
    NotInTheory,
    Holds,
    /// A strict superset in the theory refutes the property.
    Refuted(Itemset),
}

impl BorderStatus {
    pub fn holds(&self) -> bool {
        matches!(self, BorderStatus::Holds)
    }

    pub fn witness(&self) -> Option<&Itemset> {
        match self {
            BorderStatus::Refuted(w) => Some(w),
            _ => None,
        }
    }
}

impl fmt::Display for BorderStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BorderStatus::NotInTheory => f.write_str("not in theory"),
            BorderStatus::Holds => f.write_str("yes"),
            BorderStatus::Refuted(_) => f.write_str("no"),
        }
    }
}

/// Strict supersets of `pattern`, by number of added items and then in
/// canonical order.
pub fn strict_supersets(pattern: &Itemset) -> impl Iterator<Item = Itemset> + '_ {
    let free = pattern.complement().ids();
    (1..=free.len()).flat_map(move |k| {
        free.clone().into_iter().combinations(k).map(move |extra| {
            let mut q = pattern.clone();
            for id in extra {
                q = q.with(id);
            }
            q
        })
    })
}

fn border_check(
    dataset: &TransactionDataset,
    pattern: &Itemset,
    constraints: &ConstraintSet,
    same_frequency: bool,
) -> Result<BorderStatus> {
    if !satisfies(dataset, pattern, constraints)? {
        return Ok(BorderStatus::NotInTheory);
    }
    let freq = dataset.support(pattern);
    let refuting = strict_supersets(pattern)
        .find(|q| (!same_frequency || dataset.support(q) == freq) && constraints.holds(dataset, q));
    Ok(refuting.map_or(BorderStatus::Holds, BorderStatus::Refuted))
}

/// In the theory, with no strict superset in the theory. Checks every strict
/// superset.
pub fn is_maximal(
    dataset: &TransactionDataset,
    pattern: &Itemset,
    constraints: &ConstraintSet,
) -> Result<BorderStatus> {
    border_check(dataset, pattern, constraints, false)
}

/// In the theory, with no strict superset in the theory of equal frequency.
pub fn is_closed(
    dataset: &TransactionDataset,
    pattern: &Itemset,
    constraints: &ConstraintSet,
) -> Result<BorderStatus> {
    border_check(dataset, pattern, constraints, true)
}

pub fn enumerate_maximal(
    dataset: &TransactionDataset,
    constraints: &ConstraintSet,
) -> Result<Vec<Itemset>> {
    filter_theory(dataset, constraints, is_maximal)
}

pub fn enumerate_closed(
    dataset: &TransactionDataset,
    constraints: &ConstraintSet,
) -> Result<Vec<Itemset>> {
    filter_theory(dataset, constraints, is_closed)
}

type Check = fn(&TransactionDataset, &Itemset, &ConstraintSet) -> Result<BorderStatus>;

fn filter_theory(
    dataset: &TransactionDataset,
    constraints: &ConstraintSet,
    check: Check,
) -> Result<Vec<Itemset>> {
    let mut out = Vec::new();
    for p in theory(dataset, constraints)? {
        if check(dataset, &p, constraints)?.holds() {
            out.push(p);
        }
    }
    Ok(out)
}
