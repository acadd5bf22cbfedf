//! Quantitative transactions and high-utility itemsets.
//!
//! Quantitative dataset format: the same `items:` header as plain datasets,
//! then one transaction per line as `tok:qty` pairs with `qty >= 1` (`-` for
//! an empty transaction). Item utilities live in a companion file with one
//! `tok<TAB>utility` line per item.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::dataset::{
    content_lines, parse_header, transaction_tokens, ItemUniverse, TransactionDataset,
    EMPTY_TRANSACTION,
};
use crate::error::{Error, Result};
use crate::itemset::{walk_canonical, Itemset, Visit};

/// Transactions with per-item cardinalities and a per-item utility.
///
/// Membership is derived from the cardinalities: item `i` is in transaction
/// `j` exactly when `cardinality(j, i) > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuantitativeDataset {
    base: TransactionDataset,
    cardinalities: Vec<Vec<u64>>,
    utilities: Vec<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pruning {
    /// Skip extensions whose transaction-weighted utility is below the
    /// threshold.
    Twu,
    None,
}

impl QuantitativeDataset {
    pub fn new(
        universe: ItemUniverse,
        cardinalities: Vec<Vec<u64>>,
        utilities: Vec<u64>,
    ) -> Result<Self> {
        let n = universe.len();
        if utilities.len() != n {
            return Err(Error::Quantities(format!(
                "{} utilities for {n} items",
                utilities.len()
            )));
        }
        let mut transactions = Vec::with_capacity(cardinalities.len());
        for (j, row) in cardinalities.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Quantities(format!(
                    "transaction {} has {} cardinalities for {n} items",
                    j + 1,
                    row.len()
                )));
            }
            let ids = row
                .iter()
                .enumerate()
                .filter(|(_, &v)| v > 0)
                .map(|(i, _)| i);
            transactions.push(Itemset::from_ids(n, ids)?);
        }
        let qd = QuantitativeDataset {
            base: TransactionDataset::new(universe, transactions)?,
            cardinalities,
            utilities,
        };
        for j in 0..qd.len() {
            qd.transaction_utility(j)?;
        }
        Ok(qd)
    }

    pub fn base(&self) -> &TransactionDataset {
        &self.base
    }

    pub fn universe(&self) -> &ItemUniverse {
        self.base.universe()
    }

    pub fn len(&self) -> usize {
        self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty()
    }

    pub fn cardinalities(&self) -> &[Vec<u64>] {
        &self.cardinalities
    }

    pub fn cardinality(&self, j: usize, item: usize) -> u64 {
        self.cardinalities[j][item]
    }

    pub fn utilities(&self) -> &[u64] {
        &self.utilities
    }

    pub fn utility_in_transaction(&self, pattern: &Itemset, j: usize) -> Result<u64> {
        self.universe().check_pattern(pattern)?;
        if j >= self.len() {
            return Err(Error::TransactionOutOfRange {
                index: j,
                len: self.len(),
            });
        }
        self.term(pattern, j)
    }

    fn term(&self, pattern: &Itemset, j: usize) -> Result<u64> {
        if !pattern.is_subset(&self.base.transactions()[j]) {
            return Ok(0);
        }
        pattern.iter().try_fold(0u64, |acc, i| {
            self.cardinalities[j][i]
                .checked_mul(self.utilities[i])
                .and_then(|x| acc.checked_add(x))
                .ok_or(Error::Overflow("utility"))
        })
    }

    /// Sum of `u(pattern, t_j)` over the cover of `pattern`.
    pub fn utility(&self, pattern: &Itemset) -> Result<u64> {
        self.universe().check_pattern(pattern)?;
        self.utility_unchecked(pattern)
    }

    fn utility_unchecked(&self, pattern: &Itemset) -> Result<u64> {
        self.base
            .cover_any(pattern)
            .into_iter()
            .try_fold(0u64, |acc, j| {
                acc.checked_add(self.term(pattern, j)?)
                    .ok_or(Error::Overflow("utility"))
            })
    }

    pub fn is_high_utility(&self, pattern: &Itemset, ut: u64) -> Result<bool> {
        Ok(self.utility(pattern)? >= ut)
    }

    /// Utility of the whole transaction `j`.
    pub fn transaction_utility(&self, j: usize) -> Result<u64> {
        let t = &self.base.transactions()[j];
        if t.is_empty() {
            return Ok(0);
        }
        self.term(t, j)
    }

    /// Transaction-weighted utility: summed transaction utilities over the
    /// cover of `pattern`. Upper-bounds the utility of every superset.
    pub fn twu(&self, pattern: &Itemset) -> Result<u64> {
        self.universe().check(pattern)?;
        self.base
            .cover_any(pattern)
            .into_iter()
            .try_fold(0u64, |acc, j| {
                acc.checked_add(self.transaction_utility(j)?)
                    .ok_or(Error::Overflow("transaction-weighted utility"))
            })
    }

    /// First itemset in canonical order with utility at least `ut`.
    pub fn exists_high_utility_itemset(&self, ut: u64) -> Result<Option<Itemset>> {
        let mut found = None;
        self.search(ut, Pruning::Twu, &mut |p| {
            found = Some(p.clone());
            false
        })?;
        Ok(found)
    }

    /// All itemsets with utility at least `ut`, in canonical order.
    pub fn enumerate_high_utility(&self, ut: u64, pruning: Pruning) -> Result<Vec<Itemset>> {
        let mut out = Vec::new();
        self.search(ut, pruning, &mut |p| {
            out.push(p.clone());
            true
        })?;
        Ok(out)
    }

    /// Depth-first set extension; `emit` returns `false` to stop.
    fn search(
        &self,
        ut: u64,
        pruning: Pruning,
        emit: &mut dyn FnMut(&Itemset) -> bool,
    ) -> Result<()> {
        let items: Vec<usize> = (0..self.universe().len()).collect();
        let mut failure = None;
        walk_canonical(self.universe().len(), &items, &mut |p| {
            let mut step = || -> Result<Visit> {
                if pruning == Pruning::Twu && self.twu(p)? < ut {
                    return Ok(Visit::Prune);
                }
                if self.utility_unchecked(p)? >= ut && !emit(p) {
                    return Ok(Visit::Stop);
                }
                Ok(Visit::Descend)
            };
            step().unwrap_or_else(|e| {
                failure = Some(e);
                Visit::Stop
            })
        });
        failure.map_or(Ok(()), Err)
    }

    /// Transaction lines in `tok:qty` form.
    pub fn to_text(&self) -> String {
        let u = self.universe();
        let mut out = String::new();
        let _ = writeln!(out, "items: {}", u.names().join(" "));
        for row in &self.cardinalities {
            let pairs: Vec<String> = row
                .iter()
                .enumerate()
                .filter(|(_, &v)| v > 0)
                .map(|(i, v)| format!("{}:{v}", u.name(i)))
                .collect();
            if pairs.is_empty() {
                out.push_str(EMPTY_TRANSACTION);
            } else {
                out.push_str(&pairs.join(" "));
            }
            out.push('\n');
        }
        out
    }

    pub fn utilities_to_text(&self) -> String {
        let u = self.universe();
        self.utilities
            .iter()
            .enumerate()
            .map(|(i, v)| format!("{}\t{v}\n", u.name(i)))
            .collect()
    }

    pub fn parse(dataset_text: &str, utilities_text: &str) -> Result<Self> {
        let mut lines = content_lines(dataset_text);
        let universe = parse_header(&mut lines)?;
        let n = universe.len();
        let mut cardinalities = Vec::new();
        for (lineno, line) in lines {
            let mut row = vec![0u64; n];
            for tok in transaction_tokens(lineno, line)? {
                let (name, qty) = tok.split_once(':').ok_or_else(|| {
                    Error::parse(lineno, format!("expected tok:qty, got {tok:?}"))
                })?;
                let id = universe
                    .id(name)
                    .ok_or_else(|| Error::parse(lineno, format!("unknown item {name:?}")))?;
                let qty: u64 = qty
                    .parse()
                    .map_err(|_| Error::parse(lineno, format!("bad quantity in {tok:?}")))?;
                if qty == 0 {
                    return Err(Error::parse(
                        lineno,
                        format!("quantity must be >= 1 in {tok:?}"),
                    ));
                }
                if row[id] != 0 {
                    return Err(Error::parse(lineno, format!("duplicate item {name:?}")));
                }
                row[id] = qty;
            }
            cardinalities.push(row);
        }
        let utilities = parse_utilities(&universe, utilities_text)?;
        QuantitativeDataset::new(universe, cardinalities, utilities)
    }
}

fn parse_utilities(universe: &ItemUniverse, text: &str) -> Result<Vec<u64>> {
    let mut seen: HashMap<usize, u64> = HashMap::new();
    for (lineno, line) in content_lines(text) {
        if line.trim().is_empty() {
            continue;
        }
        let (name, value) = line
            .split_once('\t')
            .ok_or_else(|| Error::parse(lineno, "expected tok<TAB>utility"))?;
        let id = universe
            .id(name.trim())
            .ok_or_else(|| Error::parse(lineno, format!("unknown item {:?}", name.trim())))?;
        let value: u64 = value
            .trim()
            .parse()
            .map_err(|_| Error::parse(lineno, format!("bad utility {value:?}")))?;
        if seen.insert(id, value).is_some() {
            return Err(Error::parse(
                lineno,
                format!("duplicate utility for {name:?}"),
            ));
        }
    }
    (0..universe.len())
        .map(|i| {
            seen.get(&i).copied().ok_or_else(|| {
                Error::Quantities(format!("no utility for item {:?}", universe.name(i)))
            })
        })
        .collect()
}

pub fn read_quantitative(
    dataset_path: impl AsRef<Path>,
    utilities_path: impl AsRef<Path>,
) -> Result<QuantitativeDataset> {
    let (dp, up) = (dataset_path.as_ref(), utilities_path.as_ref());
    let d = std::fs::read_to_string(dp).map_err(|e| Error::io(dp, e))?;
    let u = std::fs::read_to_string(up).map_err(|e| Error::io(up, e))?;
    QuantitativeDataset::parse(&d, &u)
}

pub fn write_quantitative(
    qd: &QuantitativeDataset,
    dataset_path: impl AsRef<Path>,
    utilities_path: impl AsRef<Path>,
) -> Result<()> {
    let (dp, up) = (dataset_path.as_ref(), utilities_path.as_ref());
    std::fs::write(dp, qd.to_text()).map_err(|e| Error::io(dp, e))?;
    std::fs::write(up, qd.utilities_to_text()).map_err(|e| Error::io(up, e))
}
