//! Recomputes the worked values for the five-item basket and the small gadgets.

use std::fmt;

use itemlab_core::reductions::{confrule_forward, hui_forward, reduce_confrule, reduce_hui};
use itemlab_core::rules::{confidence, is_confident};
use itemlab_core::samples::{
    basket_dataset, basket_quantities, single_clause_formula, two_clause_positive_formula,
    BASKET_CARDINALITIES, BASKET_UTILITIES,
};
use itemlab_core::theory::{is_closed, is_maximal, theory};
use itemlab_core::{Assignment, AssociationRule, ConstraintSet, ConstraintTerm};

use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// The reference value is off; the recomputed one is reported instead.
    Discrepancy,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DemoLine {
    pub label: String,
    pub got: String,
    pub expected: String,
    pub status: Status,
    pub note: Option<String>,
}

impl DemoLine {
    fn check(label: impl Into<String>, got: impl ToString, expected: impl ToString) -> Self {
        let (got, expected) = (got.to_string(), expected.to_string());
        DemoLine {
            status: if got == expected {
                Status::Pass
            } else {
                Status::Fail
            },
            label: label.into(),
            got,
            expected,
            note: None,
        }
    }
}

impl fmt::Display for DemoLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.status {
            Status::Pass => write!(f, "{} = {} PASS", self.label, self.got)?,
            Status::Fail => write!(
                f,
                "{} = {} FAIL (expected {})",
                self.label, self.got, self.expected
            )?,
            Status::Discrepancy => write!(
                f,
                "{} = {} DISCREPANCY (tabulated {})",
                self.label, self.got, self.expected
            )?,
        }
        if let Some(n) = &self.note {
            write!(f, "; {n}")?;
        }
        Ok(())
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Every line, in print order.
pub fn demo_lines() -> Result<Vec<DemoLine>> {
    let mut out = Vec::new();

    let ds = basket_dataset();
    let u = ds.universe();
    let s = |t: &str| u.parse_itemset(t);
    let ce = s("C E")?;
    let cover: Vec<String> = ds.cover(&ce)?.iter().map(|&j| ds.label(j)).collect();
    out.push(DemoLine::check(
        "cover(CE)",
        format!("{{{}}}", cover.join(" ")),
        "{t3 t4 t5}",
    ));
    out.push(DemoLine::check("freq(CE)", ds.frequency(&ce)?, 3));
    out.push(DemoLine::check(
        "CE frequent at s=2",
        yes_no(ds.is_frequent(&ce, 2)?),
        "yes",
    ));

    let rule = AssociationRule::new(s("B")?, s("C")?)?;
    out.push(DemoLine::check(
        "conf(B -> C)",
        confidence(&ds, &rule)?,
        "3/4",
    ));
    out.push(DemoLine::check(
        "B -> C confident at c=60%",
        yes_no(is_confident(&ds, &rule, &"60%".parse()?)?),
        "yes",
    ));

    let qd = basket_quantities();
    let ac = s("A C")?;
    out.push(DemoLine::check(
        "u(AC, t1)",
        qd.utility_in_transaction(&ac, 0)?,
        0,
    ));
    out.push(DemoLine::check(
        "u(AC, t2)",
        qd.utility_in_transaction(&ac, 1)?,
        196,
    ));
    out.push(DemoLine::check(
        "u(AC, t3)",
        qd.utility_in_transaction(&ac, 2)?,
        218,
    ));
    out.push(DemoLine::check(
        "u(AC, t5)",
        qd.utility_in_transaction(&ac, 4)?,
        282,
    ));
    out.push(DemoLine::check("u(AC)", qd.utility(&ac)?, 696));
    out.push(DemoLine::check(
        "AC high utility at ut=660",
        yes_no(qd.is_high_utility(&ac, 660)?),
        "yes",
    ));

    // u(ACE) straight from the cardinality table, t3 and t5 being its cover
    let ace = s("A C E")?;
    let by_hand: Vec<u64> = [2usize, 4]
        .iter()
        .map(|&j| {
            [0usize, 2, 4]
                .iter()
                .map(|&i| BASKET_CARDINALITIES[j][i] * BASKET_UTILITIES[i])
                .sum()
        })
        .collect();
    let u_ace = qd.utility(&ace)?;
    let agrees = u_ace == by_hand.iter().sum::<u64>();
    out.push(DemoLine {
        label: "u(ACE)".into(),
        got: u_ace.to_string(),
        expected: "656".into(),
        status: if agrees {
            Status::Discrepancy
        } else {
            Status::Fail
        },
        note: Some(format!(
            "recomputed as u(ACE, t3) + u(ACE, t5) = {} + {} from the cardinality vectors",
            by_hand[0], by_hand[1]
        )),
    });
    let high = qd.is_high_utility(&ace, 660)?;
    out.push(DemoLine {
        label: "ACE high utility at ut=660".into(),
        got: yes_no(high).into(),
        expected: "no".into(),
        status: if high == (u_ace >= 660) {
            Status::Discrepancy
        } else {
            Status::Fail
        },
        note: Some(format!("follows from u(ACE) = {u_ace}")),
    });

    let freq2 = ConstraintSet::new(vec![ConstraintTerm::MinFreq(2)]);
    let th = theory(&ds, &freq2)?;
    out.push(DemoLine::check(
        "CE in the theory (s=2)",
        yes_no(th.contains(&ce)),
        "yes",
    ));
    out.push(DemoLine::check(
        "CE closed",
        yes_no(is_closed(&ds, &ce, &freq2)?.holds()),
        "no",
    ));
    let bce = s("B C E")?;
    out.push(DemoLine::check("freq(BCE)", ds.frequency(&bce)?, 3));
    out.push(DemoLine::check(
        "BCE closed",
        yes_no(is_closed(&ds, &bce, &freq2)?.holds()),
        "yes",
    ));
    out.push(DemoLine::check(
        "BCE maximal",
        yes_no(is_maximal(&ds, &bce, &freq2)?.holds()),
        "no",
    ));
    out.push(DemoLine::check(
        "ABCE in the theory (s=2)",
        yes_no(th.contains(&s("A B C E")?)),
        "yes",
    ));

    let conf = reduce_confrule(&single_clause_formula());
    out.push(DemoLine::check(
        "confrule gadget transactions for (v1 ∨ ¬v2 ∨ v3)",
        conf.dataset.len(),
        16,
    ));
    let witness = confrule_forward(&conf, &Assignment::new(vec![true, false, false]))?;
    let c = confidence(&conf.dataset, &witness)?;
    out.push(DemoLine::check(
        format!("conf({})", witness.format(conf.dataset.universe())),
        c,
        "3/6",
    ));

    let hui = reduce_hui(&two_clause_positive_formula())?;
    out.push(DemoLine::check("hui gadget ut = 3nm^2", hui.threshold, 60));
    out.push(DemoLine::check("hui gadget transactions", hui.qd.len(), 6));
    let p = hui_forward(
        &hui,
        &Assignment::new(vec![true, false, false, true, false]),
    )?;
    out.push(DemoLine::check(
        format!("u({})", hui.qd.universe().format(&p)),
        hui.qd.utility(&p)?,
        62,
    ));
    Ok(out)
}
