//! Item universes, transaction bags, covers and frequencies.
//!
//! Text format:
//!
//! ```text
//! # comment
//! items: A B C D E
//! A B D E
//! A C
//! -
//! ```
//!
//! The `items:` line fixes the universe and the id order. Every following
//! non-comment line is one transaction; `-` denotes an empty transaction and
//! blank lines are rejected. Repeated lines are repeated transactions.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::itemset::{walk_canonical, Itemset, Visit};

pub const EMPTY_TRANSACTION: &str = "-";
const HEADER: &str = "items:";

/// Ordered, interned set of item tokens. Ids are dense in `0..len`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ItemUniverse {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl ItemUniverse {
    pub fn new<S: Into<String>>(tokens: impl IntoIterator<Item = S>) -> Result<Self> {
        let mut names = Vec::new();
        let mut index = HashMap::new();
        for tok in tokens {
            let tok = tok.into();
            if tok.is_empty() || tok.chars().any(char::is_whitespace) || tok == EMPTY_TRANSACTION {
                return Err(Error::InvalidToken(tok));
            }
            if index.insert(tok.clone(), names.len()).is_some() {
                return Err(Error::DuplicateUniverseToken(tok));
            }
            names.push(tok);
        }
        Ok(ItemUniverse { names, index })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn id(&self, token: &str) -> Option<usize> {
        self.index.get(token).copied()
    }

    pub fn name(&self, id: usize) -> &str {
        &self.names[id]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn empty_set(&self) -> Itemset {
        Itemset::empty(self.len())
    }

    pub fn full_set(&self) -> Itemset {
        Itemset::full(self.len())
    }

    /// Builds an itemset from tokens; unknown tokens are an error.
    pub fn itemset<S: AsRef<str>>(&self, tokens: impl IntoIterator<Item = S>) -> Result<Itemset> {
        let mut set = self.empty_set();
        for tok in tokens {
            let tok = tok.as_ref();
            let id = self
                .id(tok)
                .ok_or_else(|| Error::UnknownToken(tok.to_string()))?;
            set.insert(id)?;
        }
        Ok(set)
    }

    /// Whitespace-separated token list, e.g. `"B C E"`.
    pub fn parse_itemset(&self, text: &str) -> Result<Itemset> {
        self.itemset(text.split_whitespace())
    }

    pub fn tokens(&self, set: &Itemset) -> Vec<&str> {
        set.iter().map(|id| self.name(id)).collect()
    }

    /// `{A B C}` with tokens in id order.
    pub fn format(&self, set: &Itemset) -> String {
        format!("{{{}}}", self.tokens(set).join(" "))
    }

    pub fn check(&self, set: &Itemset) -> Result<()> {
        if set.width() != self.len() {
            return Err(Error::UniverseMismatch {
                expected: self.len(),
                found: set.width(),
            });
        }
        Ok(())
    }

    pub(crate) fn check_pattern(&self, pattern: &Itemset) -> Result<()> {
        self.check(pattern)?;
        if pattern.is_empty() {
            return Err(Error::EmptyPattern);
        }
        Ok(())
    }
}

/// A bag of transactions over an item universe.
///
/// Transactions keep insertion order and multiplicity. Labels are optional
/// display names and take no part in equality.
#[derive(Debug, Clone)]
pub struct TransactionDataset {
    universe: ItemUniverse,
    transactions: Vec<Itemset>,
    labels: Option<Vec<String>>,
}

impl PartialEq for TransactionDataset {
    fn eq(&self, other: &Self) -> bool {
        self.universe == other.universe && self.transactions == other.transactions
    }
}

impl Eq for TransactionDataset {}

impl TransactionDataset {
    pub fn new(universe: ItemUniverse, transactions: Vec<Itemset>) -> Result<Self> {
        for t in &transactions {
            universe.check(t)?;
        }
        Ok(TransactionDataset {
            universe,
            transactions,
            labels: None,
        })
    }

    /// Convenience constructor from token rows.
    pub fn from_rows<S: AsRef<str>>(items: &[&str], rows: &[S]) -> Result<Self> {
        let universe = ItemUniverse::new(items.iter().copied())?;
        let transactions = rows
            .iter()
            .map(|r| universe.parse_itemset(r.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        TransactionDataset::new(universe, transactions)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.transactions.len() {
            return Err(Error::Precondition(format!(
                "{} labels for {} transactions",
                labels.len(),
                self.transactions.len()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn universe(&self) -> &ItemUniverse {
        &self.universe
    }

    pub fn transactions(&self) -> &[Itemset] {
        &self.transactions
    }

    pub fn len(&self) -> usize {
        self.transactions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.transactions.is_empty()
    }

    /// Display label of transaction `j`, `t{j+1}` when none were given.
    pub fn label(&self, j: usize) -> String {
        match &self.labels {
            Some(l) => l[j].clone(),
            None => format!("t{}", j + 1),
        }
    }

    /// Indices of transactions containing `pattern`, in order, with
    /// multiplicity.
    pub fn cover(&self, pattern: &Itemset) -> Result<Vec<usize>> {
        self.universe.check_pattern(pattern)?;
        Ok(self.cover_any(pattern))
    }

    pub fn frequency(&self, pattern: &Itemset) -> Result<usize> {
        self.universe.check_pattern(pattern)?;
        Ok(self.support(pattern))
    }

    pub fn is_frequent(&self, pattern: &Itemset, s: usize) -> Result<bool> {
        Ok(self.frequency(pattern)? >= s)
    }

    /// Cover without the non-empty precondition: the empty set is covered by
    /// every transaction. Width must already match.
    pub(crate) fn cover_any(&self, pattern: &Itemset) -> Vec<usize> {
        self.transactions
            .iter()
            .enumerate()
            .filter(|(_, t)| pattern.is_subset(t))
            .map(|(j, _)| j)
            .collect()
    }

    pub(crate) fn support(&self, pattern: &Itemset) -> usize {
        self.transactions
            .iter()
            .filter(|t| pattern.is_subset(t))
            .count()
    }

    /// Every non-empty itemset with frequency at least `s`, in canonical
    /// order. Levelwise pruning relies on anti-monotonicity of frequency.
    pub fn enumerate_frequent(&self, s: usize) -> Result<Vec<Itemset>> {
        if s == 0 {
            return Err(Error::InvalidThreshold(
                "frequent-itemset enumeration needs s >= 1".into(),
            ));
        }
        let items: Vec<usize> = (0..self.universe.len()).collect();
        let mut out = Vec::new();
        walk_canonical(self.universe.len(), &items, &mut |p| {
            if self.support(p) >= s {
                out.push(p.clone());
                Visit::Descend
            } else {
                Visit::Prune
            }
        });
        Ok(out)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{HEADER} {}", self.universe.names.join(" "));
        for t in &self.transactions {
            if t.is_empty() {
                out.push_str(EMPTY_TRANSACTION);
            } else {
                out.push_str(&self.universe.tokens(t).join(" "));
            }
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let universe = parse_header(&mut lines)?;
        let mut transactions = Vec::new();
        for (lineno, line) in lines {
            transactions.push(parse_transaction(&universe, lineno, line)?);
        }
        TransactionDataset::new(universe, transactions)
    }
}

pub fn read_dataset(path: impl AsRef<Path>) -> Result<TransactionDataset> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    TransactionDataset::parse(&text)
}

pub fn write_dataset(dataset: &TransactionDataset, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, dataset.to_text()).map_err(|e| Error::io(path, e))
}

/// Non-comment lines with 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.trim_start().starts_with('#'))
}

pub(crate) fn parse_header<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
) -> Result<ItemUniverse> {
    let (lineno, line) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "missing `items:` header"))?;
    let rest = line
        .trim()
        .strip_prefix(HEADER)
        .ok_or_else(|| Error::parse(lineno, "expected `items:` header"))?;
    ItemUniverse::new(rest.split_whitespace()).map_err(|e| Error::parse(lineno, e.to_string()))
}

/// Splits a transaction line into tokens, handling `-` and blank lines.
pub(crate) fn transaction_tokens(lineno: usize, line: &str) -> Result<Vec<&str>> {
    let toks: Vec<&str> = line.split_whitespace().collect();
    match toks.as_slice() {
        [] => Err(Error::parse(
            lineno,
            "blank line; write `-` for an empty transaction",
        )),
        [only] if *only == EMPTY_TRANSACTION => Ok(Vec::new()),
        _ => Ok(toks),
    }
}

fn parse_transaction(universe: &ItemUniverse, lineno: usize, line: &str) -> Result<Itemset> {
    let mut t = universe.empty_set();
    for tok in transaction_tokens(lineno, line)? {
        let id = universe
            .id(tok)
            .ok_or_else(|| Error::parse(lineno, format!("unknown item {tok:?}")))?;
        if !t.insert(id)? {
            return Err(Error::parse(lineno, format!("duplicate item {tok:?}")));
        }
    }
    Ok(t)
}
