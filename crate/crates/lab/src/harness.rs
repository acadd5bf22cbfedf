//! Seeded oracle-versus-miner trials over random formulas.

use std::time::{Duration, Instant};

use itemlab_core::reductions::{
    confrule_backward, confrule_forward, hui_backward, hui_forward, maxclosed_backward,
    maxclosed_forward, reduce_confrule, reduce_hui, reduce_maxclosed,
};
use itemlab_core::rules::{exists_confident_rule_with_head_item, is_confident};
use itemlab_core::sat::random_formula;
use itemlab_core::theory::{is_closed, is_maximal, satisfies};
use itemlab_core::CnfFormula;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::{enforce_caps, formula_digest, Caps, LabError, Problem, Result, Span};

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub problem: Problem,
    pub vars: Span,
    pub clauses: Span,
    pub trials: usize,
    pub seed: u64,
    pub force: bool,
    pub caps: Caps,
}

impl VerifyConfig {
    pub fn new(problem: Problem, vars: Span, clauses: Span, trials: usize, seed: u64) -> Self {
        VerifyConfig {
            problem,
            vars,
            clauses,
            trials,
            seed,
            force: false,
            caps: Caps::default(),
        }
    }
}

/// Everything needed to rebuild one trial's formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TrialSpec {
    pub trial: usize,
    pub seed: u64,
    pub n: usize,
    pub m: usize,
}

impl TrialSpec {
    pub fn formula(&self, problem: Problem) -> Result<CnfFormula> {
        Ok(random_formula(
            self.n,
            self.m,
            self.seed,
            problem == Problem::Hui,
        )?)
    }
}

/// Per-trial seeds and sizes, drawn in trial order from the base seed.
pub fn trial_specs(cfg: &VerifyConfig) -> Vec<TrialSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    (0..cfg.trials)
        .map(|trial| {
            let seed = rng.gen::<u64>();
            let n = rng.gen_range(cfg.vars.lo..=cfg.vars.hi);
            let m = rng.gen_range(cfg.clauses.lo..=cfg.clauses.hi);
            TrialSpec { trial, seed, n, m }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialOutcome {
    pub spec: TrialSpec,
    pub formula: CnfFormula,
    pub satisfiable: bool,
    pub oracle: String,
    pub miner: String,
    /// Why the trial counts as a disagreement.
    pub failure: Option<String>,
}

impl TrialOutcome {
    pub fn agrees(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Disagreement {
    pub trial: usize,
    pub seed: u64,
    pub n: usize,
    pub m: usize,
    /// FNV-1a 64 of the DIMACS text.
    pub digest: String,
    pub oracle: String,
    pub miner: String,
    pub reason: String,
    /// Clauses as DIMACS literals.
    pub formula: Vec<[i32; 3]>,
}

impl Disagreement {
    fn from_outcome(o: &TrialOutcome) -> Self {
        Disagreement {
            trial: o.spec.trial,
            seed: o.spec.seed,
            n: o.spec.n,
            m: o.spec.m,
            digest: formula_digest(&o.formula),
            oracle: o.oracle.clone(),
            miner: o.miner.clone(),
            reason: o.failure.clone().unwrap_or_default(),
            formula: o
                .formula
                .clauses()
                .iter()
                .map(|c| [c[0].raw(), c[1].raw(), c[2].raw()])
                .collect(),
        }
    }

    /// One line that is enough to rerun the trial by hand.
    pub fn repro(&self) -> String {
        let clauses: Vec<String> = self
            .formula
            .iter()
            .map(|c| format!("{} {} {} 0", c[0], c[1], c[2]))
            .collect();
        format!(
            "trial {} seed {} n {} m {} digest {} oracle {} miner {}: {} | p cnf {} {} {}",
            self.trial,
            self.seed,
            self.n,
            self.m,
            self.digest,
            self.oracle,
            self.miner,
            self.reason,
            self.n,
            self.m,
            clauses.join(" ")
        )
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub problem: Problem,
    pub seed: u64,
    pub vars: Span,
    pub clauses: Span,
    pub trials: usize,
    pub satisfiable: usize,
    pub agreements: usize,
    pub disagreements: Vec<Disagreement>,
    /// Wall time. Left out of the JSON so reruns are byte-identical.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.disagreements.is_empty()
    }

    pub fn summary(&self) -> String {
        format!(
            "{}: {}/{} agreements ({} satisfiable), vars {}, clauses {}, seed {}",
            self.problem,
            self.agreements,
            self.trials,
            self.satisfiable,
            self.vars,
            self.clauses,
            self.seed
        )
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

pub fn verify(cfg: &VerifyConfig) -> Result<VerificationReport> {
    if cfg.vars.lo < 3 {
        return Err(LabError::Usage(
            "random formulas need at least 3 variables".into(),
        ));
    }
    if cfg.clauses.lo < 1 {
        return Err(LabError::Usage(
            "random formulas need at least 1 clause".into(),
        ));
    }
    enforce_caps(
        cfg.caps
            .verify_violations(cfg.problem, cfg.vars, cfg.clauses),
        cfg.force,
    )?;

    let start = Instant::now();
    let outcomes = trial_specs(cfg)
        .into_par_iter()
        .map(|spec| run_trial(cfg.problem, spec))
        .collect::<Result<Vec<_>>>()?;

    let disagreements: Vec<Disagreement> = outcomes
        .iter()
        .filter(|o| !o.agrees())
        .map(Disagreement::from_outcome)
        .collect();
    Ok(VerificationReport {
        problem: cfg.problem,
        seed: cfg.seed,
        vars: cfg.vars,
        clauses: cfg.clauses,
        trials: outcomes.len(),
        satisfiable: outcomes.iter().filter(|o| o.satisfiable).count(),
        agreements: outcomes.len() - disagreements.len(),
        disagreements,
        elapsed: start.elapsed(),
    })
}

/// Builds the trial's formula and gadget, runs both sides and cross-checks
/// the witnesses. Only a malformed spec is an error; everything else ends up
/// in the outcome.
pub fn run_trial(problem: Problem, spec: TrialSpec) -> Result<TrialOutcome> {
    let formula = spec.formula(problem)?;
    let mut outcome = TrialOutcome {
        spec,
        formula: formula.clone(),
        satisfiable: false,
        oracle: String::new(),
        miner: String::new(),
        failure: None,
    };
    let checked = match problem {
        Problem::Confrule => confrule_trial(&formula, &mut outcome),
        Problem::Hui => hui_trial(&formula, &mut outcome),
        Problem::Maxclosed => maxclosed_trial(&formula, &mut outcome),
    };
    if let Err(e) = checked {
        outcome.failure = Some(e);
    }
    Ok(outcome)
}

type Check = std::result::Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn sat_word(sat: bool) -> String {
    if sat { "sat" } else { "unsat" }.into()
}

fn confrule_trial(f: &CnfFormula, out: &mut TrialOutcome) -> Check {
    let e = |e: itemlab_core::Error| e.to_string();
    let inst = reduce_confrule(f);
    let oracle = f.solve().map_err(e)?;
    let mined =
        exists_confident_rule_with_head_item(&inst.dataset, inst.head_item, &inst.threshold)
            .map_err(e)?;
    out.satisfiable = oracle.is_some();
    out.oracle = sat_word(oracle.is_some());
    out.miner = if mined.is_some() { "rule" } else { "none" }.into();
    ensure(oracle.is_some() == mined.is_some(), || {
        "verdicts differ".into()
    })?;

    if let (Some(a), Some(rule)) = (oracle, mined) {
        let fwd = confrule_forward(&inst, &a).map_err(e)?;
        ensure(
            is_confident(&inst.dataset, &fwd, &inst.threshold).map_err(e)?,
            || format!("forward rule for {a} is not confident"),
        )?;
        let back = confrule_backward(&inst, &fwd).map_err(e)?;
        ensure(back == a, || format!("round trip of {a} gave {back}"))?;
        let decoded = confrule_backward(&inst, &rule)
            .map_err(|err| format!("mined rule {}: {err}", rule.format(inst.dataset.universe())))?;
        ensure(f.eval(&decoded).map_err(e)?, || {
            format!("mined rule decodes to {decoded}, which does not satisfy the formula")
        })?;
    }
    Ok(())
}

fn hui_trial(f: &CnfFormula, out: &mut TrialOutcome) -> Check {
    let e = |e: itemlab_core::Error| e.to_string();
    let inst = reduce_hui(f).map_err(e)?;
    let oracle = f.solve_1in3().map_err(e)?;
    let mined = inst
        .qd
        .exists_high_utility_itemset(inst.threshold)
        .map_err(e)?;
    out.satisfiable = oracle.is_some();
    out.oracle = format!("1-in-3 {}", sat_word(oracle.is_some()));
    out.miner = if mined.is_some() { "itemset" } else { "none" }.into();
    ensure(oracle.is_some() == mined.is_some(), || {
        "verdicts differ".into()
    })?;

    if let (Some(a), Some(p)) = (oracle, mined) {
        let u = inst.qd.universe();
        let fwd = hui_forward(&inst, &a).map_err(e)?;
        let util = inst.qd.utility(&fwd).map_err(e)?;
        ensure(util >= inst.threshold, || {
            format!(
                "forward itemset {} has utility {util} < {}",
                u.format(&fwd),
                inst.threshold
            )
        })?;
        let back = hui_backward(&inst, &fwd).map_err(e)?;
        ensure(back == a, || format!("round trip of {a} gave {back}"))?;
        let decoded = hui_backward(&inst, &p)
            .map_err(|err| format!("mined itemset {}: {err}", u.format(&p)))?;
        ensure(f.eval_1in3(&decoded).map_err(e)?, || {
            format!("mined itemset decodes to {decoded}, which is not a 1-in-3 solution")
        })?;
    }
    Ok(())
}

fn maxclosed_trial(f: &CnfFormula, out: &mut TrialOutcome) -> Check {
    let e = |e: itemlab_core::Error| e.to_string();
    let inst = reduce_maxclosed(f);
    let oracle = f.solve().map_err(e)?;
    let max = is_maximal(&inst.dataset, &inst.target, &inst.constraints).map_err(e)?;
    let closed = is_closed(&inst.dataset, &inst.target, &inst.constraints).map_err(e)?;
    out.satisfiable = oracle.is_some();
    out.oracle = sat_word(oracle.is_some());
    out.miner = match (max.holds(), closed.holds()) {
        (true, true) => "maximal, closed",
        (false, false) => "not maximal, not closed",
        (true, false) => "maximal, not closed",
        (false, true) => "not maximal, closed",
    }
    .into();
    ensure(max.holds() == closed.holds(), || {
        "maximality and closedness disagree".into()
    })?;
    ensure(oracle.is_some() != max.holds(), || "verdicts differ".into())?;

    if let Some(a) = oracle {
        let u = inst.dataset.universe();
        let fwd = maxclosed_forward(&inst, &a).map_err(e)?;
        ensure(
            satisfies(&inst.dataset, &fwd, &inst.constraints).map_err(e)?,
            || {
                format!(
                    "forward pattern {} violates the constraints",
                    u.format(&fwd)
                )
            },
        )?;
        let back = maxclosed_backward(&inst, &fwd).map_err(e)?;
        ensure(back == a, || format!("round trip of {a} gave {back}"))?;
        for w in [max.witness(), closed.witness()].into_iter().flatten() {
            let decoded = maxclosed_backward(&inst, w)
                .map_err(|err| format!("superset {}: {err}", u.format(w)))?;
            ensure(f.eval(&decoded).map_err(e)?, || {
                format!(
                    "superset {} decodes to {decoded}, which does not satisfy the formula",
                    u.format(w)
                )
            })?;
        }
    }
    Ok(())
}
