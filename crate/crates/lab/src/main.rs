use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use itemlab::demo::{demo_lines, Status};
use itemlab::mine::{run_mine, run_reduce, InstancePaths, MineOptions};
use itemlab::{verify, LabError, Problem, Span, VerifyConfig};
use itemlab_core::ConfidenceThreshold;

#[derive(Parser)]
#[command(
    name = "itemlab",
    version,
    about = "Itemset mining problems, their SAT gadgets, and an oracle harness"
)]
struct Cli {
    /// Base seed for `verify`
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output directory (gadget files for `reduce`, report.json for `verify`)
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Go past brute-force caps and overwrite existing gadget files
    #[arg(long, global = true)]
    force: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reduce a 3-CNF formula to a mining instance
    Reduce {
        problem: Problem,
        #[arg(long)]
        cnf: PathBuf,
    },
    /// Run a search on an instance and print a checked witness or "none"
    Mine {
        problem: Problem,
        /// Gadget directory written by `reduce`
        #[arg(long)]
        dir: Option<PathBuf>,
        #[arg(long)]
        dataset: Option<PathBuf>,
        #[arg(long)]
        utilities: Option<PathBuf>,
        #[arg(long)]
        constraints: Option<PathBuf>,
        #[arg(long)]
        target: Option<PathBuf>,
        /// Head item for confrule
        #[arg(long)]
        item: Option<String>,
        /// Confidence threshold: 1/2, 0.5 or 50%
        #[arg(long, value_parser = parse_conf)]
        conf: Option<ConfidenceThreshold>,
        /// Utility threshold for hui
        #[arg(long)]
        ut: Option<u64>,
        /// List every high-utility itemset instead of the first
        #[arg(long)]
        all: bool,
        /// Search without TWU pruning
        #[arg(long)]
        no_prune: bool,
    },
    /// Compare miner and SAT oracle on seeded random formulas
    Verify {
        problem: Problem,
        /// Variable count, or a range like 4-6
        #[arg(long)]
        vars: Span,
        /// Clause count, or a range like 2-5
        #[arg(long)]
        clauses: Span,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Recompute the worked values on the basket dataset and the small gadgets
    Demo,
}

fn parse_conf(s: &str) -> Result<ConfidenceThreshold, String> {
    s.parse().map_err(|e: itemlab_core::Error| e.to_string())
}

fn run(cli: Cli) -> Result<u8, LabError> {
    match cli.command {
        Command::Reduce { problem, cnf } => {
            let out = cli
                .out
                .ok_or_else(|| LabError::Usage("reduce needs --out <dir>".into()))?;
            for line in run_reduce(problem, &cnf, &out, cli.force)? {
                println!("{line}");
            }
            println!("wrote {}", out.display());
            Ok(0)
        }
        Command::Mine {
            problem,
            dir,
            dataset,
            utilities,
            constraints,
            target,
            item,
            conf,
            ut,
            all,
            no_prune,
        } => {
            let paths = InstancePaths {
                dir,
                dataset,
                utilities,
                constraints,
                target,
            };
            let opts = MineOptions {
                item,
                conf,
                ut,
                all,
                no_prune,
                force: cli.force,
                ..MineOptions::default()
            };
            print!("{}", run_mine(problem, &paths, &opts)?.text());
            Ok(0)
        }
        Command::Verify {
            problem,
            vars,
            clauses,
            trials,
        } => {
            let mut cfg = VerifyConfig::new(problem, vars, clauses, trials, cli.seed);
            cfg.force = cli.force;
            let report = verify(&cfg)?;
            let dir = cli.out.unwrap_or_else(|| PathBuf::from("."));
            std::fs::create_dir_all(&dir)
                .map_err(|e| LabError::Usage(format!("{}: {e}", dir.display())))?;
            let path = dir.join("report.json");
            std::fs::write(&path, report.to_json())
                .map_err(|e| LabError::Usage(format!("{}: {e}", path.display())))?;
            println!("{}", report.summary());
            for d in &report.disagreements {
                println!("DISAGREE {}", d.repro());
            }
            println!(
                "elapsed {:.3}s, report {}",
                report.elapsed.as_secs_f64(),
                path.display()
            );
            Ok(if report.passed() { 0 } else { 1 })
        }
        Command::Demo => {
            let lines = demo_lines()?;
            for l in &lines {
                println!("{l}");
            }
            Ok(if lines.iter().any(|l| l.status == Status::Fail) {
                1
            } else {
                0
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
