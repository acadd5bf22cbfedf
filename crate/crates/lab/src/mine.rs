//! `mine` and `reduce`: run a search on an instance on disk, or write a gadget.

use std::path::{Path, PathBuf};

use itemlab_core::reductions::{
    read_maxclosed_files, reduce_confrule, reduce_hui, reduce_maxclosed, GadgetMeta,
    CONSTRAINTS_FILE, DATASET_FILE, META_FILE, TARGET_FILE, UTILITIES_FILE,
};
use itemlab_core::rules::{confidence, exists_confident_rule_with_head_item};
use itemlab_core::sat::read_dimacs;
use itemlab_core::theory::{is_closed, is_maximal, satisfies};
use itemlab_core::utility::read_quantitative;
use itemlab_core::{
    read_dataset, BorderStatus, ConfidenceThreshold, ConstraintSet, Itemset, Pruning,
    QuantitativeDataset, TransactionDataset,
};

use crate::{enforce_caps, Caps, LabError, Problem, Result};

/// Printable result of a search. `found` is false for "none".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MineOutput {
    pub lines: Vec<String>,
    pub found: bool,
}

impl MineOutput {
    pub fn text(&self) -> String {
        self.lines.iter().map(|l| format!("{l}\n")).collect()
    }
}

fn check_items(problem: Problem, items: usize, caps: &Caps, force: bool) -> Result<()> {
    let cap = caps.item_cap(problem);
    let v = if items > cap {
        vec![format!("{problem}: {items} items exceeds the cap of {cap}")]
    } else {
        vec![]
    };
    enforce_caps(v, force)
}

/// Transactions containing every item of `set`, counted directly.
fn count_containing(ds: &TransactionDataset, set: &Itemset) -> usize {
    ds.transactions()
        .iter()
        .filter(|t| t.is_superset(set))
        .count()
}

pub fn mine_confrule(
    ds: &TransactionDataset,
    item: &str,
    threshold: &ConfidenceThreshold,
    caps: &Caps,
    force: bool,
) -> Result<MineOutput> {
    let u = ds.universe();
    check_items(Problem::Confrule, u.len(), caps, force)?;
    let z = u
        .id(item)
        .ok_or_else(|| LabError::Usage(format!("item `{item}` is not in the dataset")))?;
    let Some(rule) = exists_confident_rule_with_head_item(ds, z, threshold)? else {
        return Ok(MineOutput {
            lines: vec!["none".into()],
            found: false,
        });
    };

    let joint = count_containing(ds, &rule.items());
    let body = count_containing(ds, rule.body());
    let meets = body > 0
        && joint as u128 * threshold.denom() as u128 >= threshold.numer() as u128 * body as u128;
    let conf = confidence(ds, &rule)?;
    if !meets || (conf.joint, conf.body) != (joint, body) || !rule.head().contains(z) {
        return Err(LabError::Check(format!(
            "{} recomputes to {joint}/{body}",
            rule.format(u)
        )));
    }
    Ok(MineOutput {
        lines: vec![
            format!("rule: {}", rule.format_with_confidence(u, conf)),
            format!(
                "certificate: freq({}) = {joint}, freq({}) = {body}, {joint}/{body} >= {threshold}",
                u.format(&rule.items()),
                u.format(rule.body()),
            ),
        ],
        found: true,
    })
}

/// Utility summed straight from the cardinality matrix.
fn recompute_utility(qd: &QuantitativeDataset, p: &Itemset) -> u128 {
    let ids = p.ids();
    qd.cardinalities()
        .iter()
        .filter(|row| ids.iter().all(|&i| row[i] > 0))
        .map(|row| {
            ids.iter()
                .map(|&i| row[i] as u128 * qd.utilities()[i] as u128)
                .sum::<u128>()
        })
        .sum()
}

pub fn mine_hui(
    qd: &QuantitativeDataset,
    ut: u64,
    all: bool,
    pruning: Pruning,
    caps: &Caps,
    force: bool,
) -> Result<MineOutput> {
    let u = qd.universe();
    check_items(Problem::Hui, u.len(), caps, force)?;
    let found: Vec<Itemset> = if all {
        qd.enumerate_high_utility(ut, pruning)?
    } else if pruning == Pruning::Twu {
        qd.exists_high_utility_itemset(ut)?.into_iter().collect()
    } else {
        qd.enumerate_high_utility(ut, pruning)?
            .into_iter()
            .take(1)
            .collect()
    };
    if found.is_empty() {
        return Ok(MineOutput {
            lines: vec!["none".into()],
            found: false,
        });
    }
    let mut lines = Vec::new();
    for p in &found {
        let util = recompute_utility(qd, p);
        if util < ut as u128 || util != qd.utility(p)? as u128 {
            return Err(LabError::Check(format!(
                "{} recomputes to utility {util}",
                u.format(p)
            )));
        }
        lines.push(format!("itemset: {}", u.format(p)));
        lines.push(format!("certificate: u({}) = {util} >= {ut}", u.format(p)));
    }
    Ok(MineOutput { lines, found: true })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn mine_maxclosed(
    ds: &TransactionDataset,
    constraints: &ConstraintSet,
    target: &Itemset,
    caps: &Caps,
    force: bool,
) -> Result<MineOutput> {
    let u = ds.universe();
    check_items(Problem::Maxclosed, u.len(), caps, force)?;
    let max = is_maximal(ds, target, constraints)?;
    let closed = is_closed(ds, target, constraints)?;
    if max == BorderStatus::NotInTheory {
        return Ok(MineOutput {
            lines: vec![format!(
                "maximal: no, closed: no ({} is not in the theory)",
                u.format(target)
            )],
            found: false,
        });
    }
    let mut lines = vec![format!(
        "maximal: {}, closed: {}",
        yes_no(max.holds()),
        yes_no(closed.holds())
    )];
    let freq = count_containing(ds, target);
    for (kind, status) in [("maximal", &max), ("closed", &closed)] {
        let Some(q) = status.witness() else { continue };
        let qf = count_containing(ds, q);
        let ok = q.is_superset(target)
            && q.len() > target.len()
            && satisfies(ds, q, constraints)?
            && (kind == "maximal" || qf == freq);
        if !ok {
            return Err(LabError::Check(format!(
                "counterexample {} to {kind} does not hold up",
                u.format(q)
            )));
        }
        lines.push(format!(
            "not {kind}: {} is a strict superset in the theory with frequency {qf} (target {freq})",
            u.format(q)
        ));
    }
    Ok(MineOutput { lines, found: true })
}

/// Instance files for `mine`. Explicit paths win over `--dir` defaults.
#[derive(Debug, Clone, Default)]
pub struct InstancePaths {
    pub dir: Option<PathBuf>,
    pub dataset: Option<PathBuf>,
    pub utilities: Option<PathBuf>,
    pub constraints: Option<PathBuf>,
    pub target: Option<PathBuf>,
}

impl InstancePaths {
    fn pick(&self, explicit: &Option<PathBuf>, file: &str, flag: &str) -> Result<PathBuf> {
        match (explicit, &self.dir) {
            (Some(p), _) => Ok(p.clone()),
            (None, Some(d)) => Ok(d.join(file)),
            (None, None) => Err(LabError::Usage(format!("need --{flag} or --dir"))),
        }
    }

    pub fn dataset(&self) -> Result<PathBuf> {
        self.pick(&self.dataset, DATASET_FILE, "dataset")
    }

    pub fn utilities(&self) -> Result<PathBuf> {
        self.pick(&self.utilities, UTILITIES_FILE, "utilities")
    }

    pub fn constraints(&self) -> Result<PathBuf> {
        self.pick(&self.constraints, CONSTRAINTS_FILE, "constraints")
    }

    pub fn target(&self) -> Result<PathBuf> {
        self.pick(&self.target, TARGET_FILE, "target")
    }

    /// `meta.txt` from the directory, if both exist.
    pub fn meta(&self) -> Result<Option<GadgetMeta>> {
        match &self.dir {
            Some(d) if d.join(META_FILE).exists() => Ok(Some(GadgetMeta::read(d.join(META_FILE))?)),
            _ => Ok(None),
        }
    }
}

/// Search options; unset values fall back to the gadget's `meta.txt`.
#[derive(Debug, Clone, Default)]
pub struct MineOptions {
    pub item: Option<String>,
    pub conf: Option<ConfidenceThreshold>,
    pub ut: Option<u64>,
    pub all: bool,
    pub no_prune: bool,
    pub force: bool,
    pub caps: Caps,
}

pub fn run_mine(problem: Problem, paths: &InstancePaths, opts: &MineOptions) -> Result<MineOutput> {
    let meta = paths.meta()?;
    let meta_value = |key: &str| meta.as_ref().and_then(|m| m.get(key).map(str::to_string));
    match problem {
        Problem::Confrule => {
            let ds = read_dataset(paths.dataset()?)?;
            let item = opts
                .item
                .clone()
                .or_else(|| meta_value("head_item"))
                .ok_or_else(|| LabError::Usage("need --item".into()))?;
            let conf = match (opts.conf, meta_value("threshold")) {
                (Some(c), _) => c,
                (None, Some(t)) => t
                    .parse()
                    .map_err(|e| LabError::Usage(format!("threshold in meta.txt: {e}")))?,
                (None, None) => ConfidenceThreshold::HALF,
            };
            mine_confrule(&ds, &item, &conf, &opts.caps, opts.force)
        }
        Problem::Hui => {
            let qd = read_quantitative(paths.dataset()?, paths.utilities()?)?;
            let ut = match (opts.ut, meta_value("threshold")) {
                (Some(v), _) => v,
                (None, Some(t)) => t
                    .parse()
                    .map_err(|_| LabError::Usage(format!("threshold in meta.txt: `{t}`")))?,
                (None, None) => return Err(LabError::Usage("need --ut".into())),
            };
            let pruning = if opts.no_prune {
                Pruning::None
            } else {
                Pruning::Twu
            };
            mine_hui(&qd, ut, opts.all, pruning, &opts.caps, opts.force)
        }
        Problem::Maxclosed => {
            let (ds, c, t) =
                read_maxclosed_files(paths.dataset()?, paths.constraints()?, paths.target()?)?;
            mine_maxclosed(&ds, &c, &t, &opts.caps, opts.force)
        }
    }
}

/// Reduces the formula in `cnf` and writes the gadget into `out`. Returns the
/// size summary. Existing gadget files are only replaced with `force`.
pub fn run_reduce(problem: Problem, cnf: &Path, out: &Path, force: bool) -> Result<Vec<String>> {
    let formula = read_dimacs(cnf)?;
    let existing = out.join(DATASET_FILE);
    if existing.exists() && !force {
        return Err(LabError::Usage(format!(
            "{} already exists (pass --force to overwrite)",
            existing.display()
        )));
    }
    let meta = match problem {
        Problem::Confrule => {
            let inst = reduce_confrule(&formula);
            inst.write_dir(out)?;
            inst.meta()
        }
        Problem::Hui => {
            let inst = reduce_hui(&formula)?;
            inst.write_dir(out)?;
            inst.meta()
        }
        Problem::Maxclosed => {
            let inst = reduce_maxclosed(&formula);
            inst.write_dir(out)?;
            inst.meta()
        }
    };
    Ok(meta.to_text().lines().map(str::to_string).collect())
}
