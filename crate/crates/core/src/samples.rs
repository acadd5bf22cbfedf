//! Small reference instances used by tests, the demo command and docs.

use crate::dataset::{ItemUniverse, TransactionDataset};
use crate::sat::CnfFormula;
use crate::utility::QuantitativeDataset;

pub const BASKET_ITEMS: [&str; 5] = ["A", "B", "C", "D", "E"];

pub const BASKET_ROWS: [&str; 5] = ["A B D E", "A C", "A B C E", "B C E", "A B C E"];

/// Cardinality vectors for the basket transactions, item order A..E.
pub const BASKET_CARDINALITIES: [[u64; 5]; 5] = [
    [5, 7, 0, 3, 1],
    [4, 0, 8, 0, 0],
    [2, 11, 14, 0, 3],
    [0, 9, 24, 0, 1],
    [6, 5, 11, 0, 2],
];

pub const BASKET_UTILITIES: [u64; 5] = [25, 14, 12, 36, 34];

/// Five items, five transactions.
pub fn basket_dataset() -> TransactionDataset {
    TransactionDataset::from_rows(&BASKET_ITEMS, &BASKET_ROWS).expect("static dataset")
}

/// The basket dataset with cardinalities and unit profits.
pub fn basket_quantities() -> QuantitativeDataset {
    QuantitativeDataset::new(
        ItemUniverse::new(BASKET_ITEMS).expect("static universe"),
        BASKET_CARDINALITIES.iter().map(|r| r.to_vec()).collect(),
        BASKET_UTILITIES.to_vec(),
    )
    .expect("static quantities")
}

/// `v1 ∨ ¬v2 ∨ v3`.
pub fn single_clause_formula() -> CnfFormula {
    CnfFormula::new(3, vec![[1, -2, 3]]).expect("static formula")
}

/// `(v1 ∨ v2 ∨ v3) ∧ (v2 ∨ v4 ∨ v5)`.
pub fn two_clause_positive_formula() -> CnfFormula {
    CnfFormula::new(5, vec![[1, 2, 3], [2, 4, 5]]).expect("static formula")
}

/// All eight sign patterns over `v1, v2, v3`; unsatisfiable.
pub fn full_sign_formula() -> CnfFormula {
    let clauses = (0..8)
        .map(|mask: i32| {
            let lit = |v: i32, bit: i32| if mask >> bit & 1 == 1 { -v } else { v };
            [lit(1, 0), lit(2, 1), lit(3, 2)]
        })
        .collect();
    CnfFormula::new(3, clauses).expect("static formula")
}
