//! Command implementations and the randomized verification harness behind the
//! `itemlab` binary.
//!
//! Each gadget is checked against an exhaustive SAT oracle: a formula is drawn
//! from a seed, reduced, and the miner's verdict on the gadget is compared
//! with the oracle's verdict on the formula. Witnesses are mapped in both
//! directions and re-checked.

pub mod demo;
pub mod harness;
pub mod mine;

use std::fmt;
use std::hash::Hasher;
use std::str::FromStr;

use serde::Serialize;

pub use harness::{verify, Disagreement, TrialSpec, VerificationReport, VerifyConfig};

#[derive(Debug, thiserror::Error)]
pub enum LabError {
    #[error(transparent)]
    Core(#[from] itemlab_core::Error),
    #[error("{0}")]
    Usage(String),
    /// A witness failed its re-check. Never expected; reported with exit 1.
    #[error("witness check failed: {0}")]
    Check(String),
}

impl LabError {
    pub fn exit_code(&self) -> i32 {
        match self {
            LabError::Check(_) => 1,
            LabError::Core(itemlab_core::Error::Witness(_)) => 1,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, LabError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Problem {
    Confrule,
    Hui,
    Maxclosed,
}

impl Problem {
    pub fn name(self) -> &'static str {
        match self {
            Problem::Confrule => "confrule",
            Problem::Hui => "hui",
            Problem::Maxclosed => "maxclosed",
        }
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Inclusive range written `A` or `A-B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Span {
    pub lo: usize,
    pub hi: usize,
}

impl Span {
    pub fn single(v: usize) -> Self {
        Span { lo: v, hi: v }
    }
}

impl FromStr for Span {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let num = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| format!("`{s}` is not a count or range like 3-5"))
        };
        let span = match s.split_once('-') {
            Some((a, b)) => Span {
                lo: num(a)?,
                hi: num(b)?,
            },
            None => Span::single(num(s)?),
        };
        if span.lo > span.hi {
            return Err(format!("empty range `{s}`"));
        }
        Ok(span)
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo == self.hi {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "{}-{}", self.lo, self.hi)
        }
    }
}

/// 64-bit FNV-1a.
pub fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h = fnv::FnvHasher::default();
    h.write(bytes);
    h.finish()
}

/// FNV-1a of the formula's DIMACS text, as 16 hex digits.
pub fn formula_digest(formula: &itemlab_core::CnfFormula) -> String {
    format!("{:016x}", fnv1a(formula.to_dimacs().as_bytes()))
}

/// Brute-force limits. Going past them needs `--force`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub confrule_vars: usize,
    pub hui_vars: usize,
    pub maxclosed_vars: usize,
    pub maxclosed_clauses: usize,
    pub confrule_items: usize,
    pub hui_items: usize,
    pub maxclosed_items: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            confrule_vars: 5,
            hui_vars: 14,
            maxclosed_vars: 4,
            maxclosed_clauses: 5,
            confrule_items: 2 * 5 + 1,
            hui_items: 14,
            maxclosed_items: 14,
        }
    }
}

impl Caps {
    /// Problems with the verify ranges, one message per exceeded bound.
    pub fn verify_violations(&self, problem: Problem, vars: Span, clauses: Span) -> Vec<String> {
        let mut out = Vec::new();
        let (vcap, ccap) = match problem {
            Problem::Confrule => (self.confrule_vars, None),
            Problem::Hui => (self.hui_vars, None),
            Problem::Maxclosed => (self.maxclosed_vars, Some(self.maxclosed_clauses)),
        };
        if vars.hi > vcap {
            out.push(format!(
                "{problem}: {} variables exceeds the cap of {vcap}",
                vars.hi
            ));
        }
        if let Some(ccap) = ccap {
            if clauses.hi > ccap {
                out.push(format!(
                    "{problem}: {} clauses exceeds the cap of {ccap}",
                    clauses.hi
                ));
            }
        }
        out
    }

    pub fn item_cap(&self, problem: Problem) -> usize {
        match problem {
            Problem::Confrule => self.confrule_items,
            Problem::Hui => self.hui_items,
            Problem::Maxclosed => self.maxclosed_items,
        }
    }
}

/// Turns cap violations into an error, or into warnings on stderr when forced.
pub fn enforce_caps(violations: Vec<String>, force: bool) -> Result<()> {
    if violations.is_empty() {
        return Ok(());
    }
    if !force {
        return Err(LabError::Usage(format!(
            "{} (pass --force to run anyway)",
            violations.join("; ")
        )));
    }
    for v in violations {
        eprintln!("warning: {v}; continuing because of --force");
    }
    Ok(())
}
