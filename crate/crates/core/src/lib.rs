//! Itemset mining problems and the SAT gadgets that make them hard.
//!
//! The crate covers three search problems over transaction datasets
//! (confident rules with a fixed head item, high-utility itemsets, and
//! maximal/closed itemsets of a constrained theory), exhaustive SAT oracles,
//! and polynomial constructions mapping 3-CNF formulas onto each problem.
//! Everything is exact integer or rational arithmetic.

pub mod dataset;
pub mod error;
pub mod itemset;
pub mod reductions;
pub mod rules;
pub mod samples;
pub mod sat;
pub mod theory;
pub mod utility;

pub use dataset::{read_dataset, write_dataset, ItemUniverse, TransactionDataset};
pub use error::{Error, Result};
pub use itemset::Itemset;
pub use rules::{AssociationRule, Confidence, ConfidenceThreshold};
pub use sat::{Assignment, CnfFormula, Literal};
pub use theory::{BorderStatus, ConstraintSet, ConstraintTerm};
pub use utility::{Pruning, QuantitativeDataset};
