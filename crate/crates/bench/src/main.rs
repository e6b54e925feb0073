#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand};
use serde::Serialize;

use ccd_bench::avoid::{bench_avoidance_loop, validate_selection, Scenario};
use ccd_bench::forest::bench_forest_stopping;
use ccd_bench::random_sphere::{bench_random_sphere, oracle_mismatches};
use ccd_bench::scene::{read_json, Scene, TrajectorySpec};
use ccd_bench::{BenchError, Result};
use ccd_core::{CheckConfig, Verdict};

const EXIT_CONFIG: u8 = 2;
const EXIT_VALIDATION: u8 = 3;
const ORACLE_DT: f64 = 1e-4;

/// Continuous collision checking of quintic trajectories: scene checks and
/// Monte Carlo benchmarks.
#[derive(Debug, Parser)]
#[command(name = "ccd-bench", version)]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Re-verify collision-free verdicts with the sampling oracle.
    #[arg(long, global = true)]
    validate: bool,
    /// Write the report here instead of stdout; `.csv` selects CSV.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check one trajectory against every obstacle of a scene.
    Check { scene: PathBuf, trajectory: PathBuf },
    /// Random trajectories against one random sphere each.
    BenchRandomSphere {
        #[arg(long, default_value_t = 1_000_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.002)]
        tmin: f64,
    },
    /// Batches of stopping trajectories through a forest layout.
    BenchForest {
        #[arg(long)]
        layout: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        batches: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.002)]
        tmin: f64,
    },
    /// Time-budgeted avoidance planning for one scenario.
    BenchAvoid {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long, default_value_t = 15.0)]
        budget_ms: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.002)]
        tmin: f64,
    },
}

struct Run {
    json: String,
    csv: String,
    validation_failed: bool,
}

#[derive(Serialize)]
struct CheckReport {
    verdict: String,
    witness: Option<f64>,
    obstacles: Vec<ObstacleVerdict>,
    oracle_hit: Option<(usize, f64)>,
}

#[derive(Serialize)]
struct ObstacleVerdict {
    index: usize,
    verdict: String,
    witness: Option<f64>,
}

fn describe(v: &Verdict) -> (String, Option<f64>) {
    match v {
        Verdict::Feasible => ("feasible".into(), None),
        Verdict::Infeasible { witness } => ("infeasible".into(), Some(*witness)),
        Verdict::Indeterminable => ("indeterminable".into(), None),
    }
}

fn config(tmin: f64) -> Result<CheckConfig> {
    CheckConfig::with_t_min(tmin).map_err(|e| BenchError::Config(e.to_string()))
}

fn run(cli: &Cli) -> Result<Run> {
    match &cli.command {
        Command::Check { scene, trajectory } => {
            let scene = Scene::load(scene)?;
            let traj = read_json::<TrajectorySpec>(trajectory)?.build()?;
            let cfg = CheckConfig::default();
            let (verdict, witness) = describe(&scene.check(&traj, &cfg));
            let obstacles = scene
                .check_each(&traj, &cfg)
                .iter()
                .enumerate()
                .map(|(index, v)| {
                    let (verdict, witness) = describe(v);
                    ObstacleVerdict {
                        index,
                        verdict,
                        witness,
                    }
                })
                .collect();
            let feasible = verdict == "feasible";
            let oracle_hit = if cli.validate {
                scene.oracle_check(&traj, ORACLE_DT)
            } else {
                None
            };
            let report = CheckReport {
                verdict,
                witness,
                obstacles,
                oracle_hit,
            };
            let mut csv = format!("metric,value\nverdict,{}\n", report.verdict);
            for o in &report.obstacles {
                csv.push_str(&format!("obstacle.{},{}\n", o.index, o.verdict));
            }
            Ok(Run {
                json: serde_json::to_string_pretty(&report).expect("serializable"),
                csv,
                validation_failed: feasible && report.oracle_hit.is_some(),
            })
        }
        Command::BenchRandomSphere { trials, seed, tmin } => {
            if *trials == 0 {
                return Err(BenchError::Config("--trials must be at least 1".into()));
            }
            let cfg = config(*tmin)?;
            let mut report = bench_random_sphere(*trials, *seed, &cfg);
            let mut failed = false;
            if cli.validate {
                let mismatches = oracle_mismatches(*trials, *seed, &cfg, ORACLE_DT);
                report.metric("validation_failures", mismatches.len() as f64);
                failed = !mismatches.is_empty();
            }
            Ok(Run {
                json: report.to_json(),
                csv: report.to_csv(),
                validation_failed: failed,
            })
        }
        Command::BenchForest {
            layout,
            batches,
            seed,
            tmin,
        } => {
            if *batches == 0 {
                return Err(BenchError::Config("--batches must be at least 1".into()));
            }
            let scene = Scene::load(layout)?;
            let report =
                bench_forest_stopping(&scene, *batches, *seed, &config(*tmin)?, cli.validate);
            let failed = report
                .metrics
                .get("validation_failures")
                .is_some_and(|&f| f > 0.0);
            Ok(Run {
                json: report.to_json(),
                csv: report.to_csv(),
                validation_failed: failed,
            })
        }
        Command::BenchAvoid {
            scenario,
            budget_ms,
            seed,
            tmin,
        } => {
            if !(*budget_ms >= 0.0 && budget_ms.is_finite()) {
                return Err(BenchError::Config(format!(
                    "invalid --budget-ms {budget_ms}"
                )));
            }
            let scenario = Scenario::load(scenario)?;
            let cfg = config(*tmin)?;
            let budget = Duration::from_secs_f64(budget_ms / 1e3);
            let mut report = bench_avoidance_loop(&scenario, budget, *seed, &cfg);
            if cli.validate {
                report.validation = validate_selection(&scenario, &report, &cfg);
            }
            Ok(Run {
                json: report.to_json(),
                csv: report.to_csv(),
                validation_failed: report.validation == Some(false),
            })
        }
    }
}

fn emit(path: Option<&Path>, run: &Run) -> Result<()> {
    let text = match path {
        Some(p) if p.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv")) => &run.csv,
        _ => &run.json,
    };
    match path {
        Some(p) => std::fs::write(p, text).map_err(|source| BenchError::Io {
            path: p.to_owned(),
            source,
        }),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: cannot configure {n} threads: {e}");
            return ExitCode::from(EXIT_CONFIG);
        }
    }
    let result = run(&cli).and_then(|r| emit(cli.output.as_deref(), &r).map(|()| r));
    match result {
        Ok(r) if r.validation_failed => {
            eprintln!("error: oracle contradicts a collision-free verdict");
            ExitCode::from(EXIT_VALIDATION)
        }
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_CONFIG)
        }
    }
}
