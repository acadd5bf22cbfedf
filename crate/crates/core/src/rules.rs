//! Association rules, exact confidence, and the search for a confident rule
//! whose head contains a designated item.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::dataset::{ItemUniverse, TransactionDataset};
use crate::error::{Error, Result};
use crate::itemset::{walk_canonical, Itemset, Visit};

/// Rule `body -> head` with disjoint sides and a non-empty head. The body may
/// be empty, in which case it is covered by every transaction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AssociationRule {
    body: Itemset,
    head: Itemset,
}

impl AssociationRule {
    pub fn new(body: Itemset, head: Itemset) -> Result<Self> {
        if body.width() != head.width() {
            return Err(Error::UniverseMismatch {
                expected: body.width(),
                found: head.width(),
            });
        }
        if head.is_empty() {
            return Err(Error::EmptyHead);
        }
        if !body.is_disjoint(&head) {
            return Err(Error::OverlappingRule);
        }
        Ok(AssociationRule { body, head })
    }

    pub fn body(&self) -> &Itemset {
        &self.body
    }

    pub fn head(&self) -> &Itemset {
        &self.head
    }

    pub fn items(&self) -> Itemset {
        self.body.union(&self.head)
    }

    /// `{X} -> {Y}`.
    pub fn format(&self, universe: &ItemUniverse) -> String {
        format!(
            "{} -> {}",
            universe.format(&self.body),
            universe.format(&self.head)
        )
    }

    /// `{X} -> {Y} @ conf p/q`, with the unreduced frequency ratio.
    pub fn format_with_confidence(&self, universe: &ItemUniverse, conf: Confidence) -> String {
        format!("{} @ conf {}", self.format(universe), conf)
    }
}

/// Exact confidence `freq(X ∪ Y) / freq(X)` kept as the two counts.
#[derive(Debug, Clone, Copy)]
pub struct Confidence {
    pub joint: usize,
    pub body: usize,
}

impl Confidence {
    pub fn reduced(&self) -> (u64, u64) {
        let g = gcd(self.joint as u64, self.body as u64).max(1);
        (self.joint as u64 / g, self.body as u64 / g)
    }

    pub fn meets(&self, c: &ConfidenceThreshold) -> bool {
        // joint/body >= num/den  <=>  joint*den >= num*body
        (self.joint as u128) * (c.den as u128) >= (c.num as u128) * (self.body as u128)
    }
}

impl PartialEq for Confidence {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Confidence {}

impl Ord for Confidence {
    fn cmp(&self, other: &Self) -> Ordering {
        ((self.joint as u128) * (other.body as u128))
            .cmp(&((other.joint as u128) * (self.body as u128)))
    }
}

impl PartialOrd for Confidence {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Confidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.joint, self.body)
    }
}

/// Rational threshold in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConfidenceThreshold {
    num: u64,
    den: u64,
}

impl ConfidenceThreshold {
    pub const HALF: ConfidenceThreshold = ConfidenceThreshold { num: 1, den: 2 };

    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 || num > den {
            return Err(Error::InvalidThreshold(format!(
                "confidence {num}/{den} is not in [0, 1]"
            )));
        }
        let g = gcd(num, den).max(1);
        Ok(ConfidenceThreshold {
            num: num / g,
            den: den / g,
        })
    }

    pub fn numer(&self) -> u64 {
        self.num
    }

    pub fn denom(&self) -> u64 {
        self.den
    }
}

impl fmt::Display for ConfidenceThreshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Accepts `p/q`, decimals such as `0.5`, and percentages such as `60%`.
impl FromStr for ConfidenceThreshold {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidThreshold(format!("cannot parse confidence {s:?}"));
        let s = s.trim();
        if let Some((p, q)) = s.split_once('/') {
            let p = p.trim().parse().map_err(|_| bad())?;
            let q = q.trim().parse().map_err(|_| bad())?;
            return ConfidenceThreshold::new(p, q);
        }
        let (digits, scale) = match s.strip_suffix('%') {
            Some(rest) => (rest.trim(), 100u64),
            None => (s, 1u64),
        };
        let (int, frac) = digits.split_once('.').unwrap_or((digits, ""));
        if int.is_empty() && frac.is_empty()
            || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit())
            || frac.len() > 12
        {
            return Err(bad());
        }
        let den = 10u64.pow(frac.len() as u32);
        let num = format!("{int}{frac}").parse::<u64>().map_err(|_| bad())?;
        let den = den.checked_mul(scale).ok_or_else(bad)?;
        ConfidenceThreshold::new(num, den)
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn confidence(dataset: &TransactionDataset, rule: &AssociationRule) -> Result<Confidence> {
    dataset.universe().check(rule.body())?;
    let body = dataset.support(rule.body());
    if body == 0 {
        return Err(Error::UndefinedConfidence);
    }
    Ok(Confidence {
        joint: dataset.support(&rule.items()),
        body,
    })
}

pub fn is_confident(
    dataset: &TransactionDataset,
    rule: &AssociationRule,
    c: &ConfidenceThreshold,
) -> Result<bool> {
    Ok(confidence(dataset, rule)?.meets(c))
}

/// First rule in canonical order with `z` in its head and confidence at
/// least `c`, or `None` if no such rule exists.
///
/// Canonical order runs over bodies in itemset order (the empty body first),
/// then over heads containing `z` in itemset order. For a fixed body the head
/// `{z}` has the highest confidence of any head containing `z`, so a body is
/// only explored further when `{z}` already meets the threshold. Bodies with
/// frequency 0 are skipped along with all their supersets.
pub fn exists_confident_rule_with_head_item(
    dataset: &TransactionDataset,
    z: usize,
    c: &ConfidenceThreshold,
) -> Result<Option<AssociationRule>> {
    let width = dataset.universe().len();
    if z >= width {
        return Err(Error::ItemOutOfRange { id: z, width });
    }
    let others: Vec<usize> = (0..width).filter(|&i| i != z).collect();

    let empty = Itemset::empty(width);
    if let Some(head) = first_head(dataset, &empty, z, c) {
        return Ok(Some(AssociationRule::new(empty, head)?));
    }
    let mut found = None;
    walk_canonical(width, &others, &mut |body| {
        if dataset.support(body) == 0 {
            return Visit::Prune;
        }
        match first_head(dataset, body, z, c) {
            Some(head) => {
                found = Some((body.clone(), head));
                Visit::Stop
            }
            None => Visit::Descend,
        }
    });
    found
        .map(|(body, head)| AssociationRule::new(body, head))
        .transpose()
}

fn first_head(
    dataset: &TransactionDataset,
    body: &Itemset,
    z: usize,
    c: &ConfidenceThreshold,
) -> Option<Itemset> {
    let body_freq = dataset.support(body);
    if body_freq == 0 {
        return None;
    }
    let conf_of = |head: &Itemset| Confidence {
        joint: dataset.support(&body.union(head)),
        body: body_freq,
    };
    if !conf_of(&body.with(z).difference(body)).meets(c) {
        return None;
    }
    let width = body.width();
    let candidates: Vec<usize> = (0..width).filter(|&i| !body.contains(i)).collect();
    let mut found = None;
    walk_canonical(width, &candidates, &mut |head| {
        if !head.contains(z) {
            return Visit::Descend;
        }
        if conf_of(head).meets(c) {
            found = Some(head.clone());
            Visit::Stop
        } else {
            Visit::Prune
        }
    });
    found
}
