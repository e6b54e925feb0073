//! Time-budgeted sample-and-select avoidance planning.
//!
//! Candidates run from the scenario's initial state to rest at a random
//! point of the end region. Each goes through, in order: average-jerk
//! rejection against the best candidate so far, input bounds, workspace
//! containment, collision checking, and for moving obstacles a check that
//! the vehicle parked at the end point stays clear until the horizon. The
//! cheapest candidate that passes everything is selected.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;
use std::time::{Duration, Instant};

use rand::Rng;
use serde::{Deserialize, Serialize};

use ccd_core::{
    CheckConfig, EndConstraint, InputBounds, InputFeasibility, QuinticTrajectory, State, Vec3,
    Verdict,
};

use crate::error::{BenchError, Result};
use crate::report::VerdictCounts;
use crate::rng::{trial_rng, uniform_vec};
use crate::scene::{read_json, Scene, SceneSpec, StateSpec, TrajectorySpec, WorkspaceSpec};

/// Candidates between clock reads.
pub const CLOCK_STRIDE: u64 = 32;
pub const ORACLE_DT: f64 = 1e-4;

fn default_duration_range() -> [f64; 2] {
    [0.5, 2.0]
}

fn default_horizon() -> f64 {
    5.0
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NominalSpec {
    pub end: StateSpec,
    pub duration: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioSpec {
    #[serde(flatten)]
    pub scene: SceneSpec,
    pub initial_state: StateSpec,
    /// Trajectory the vehicle was following when the loop starts.
    #[serde(default)]
    pub nominal: Option<NominalSpec>,
    pub end_region: WorkspaceSpec,
    #[serde(default = "default_duration_range")]
    pub duration_range: [f64; 2],
    /// Seconds after the loop starts during which moving obstacles are
    /// checked against the parked vehicle.
    #[serde(default = "default_horizon")]
    pub horizon: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub scene: Scene,
    pub initial: State,
    pub nominal: Option<QuinticTrajectory>,
    pub end_min: Vec3,
    pub end_max: Vec3,
    pub duration_range: (f64, f64),
    pub horizon: f64,
}

impl Scenario {
    pub fn from_spec(spec: &ScenarioSpec) -> Result<Self> {
        let scene = Scene::from_spec(&spec.scene)?;
        let initial = spec.initial_state.to_state()?;
        let nominal = match &spec.nominal {
            Some(n) => Some(QuinticTrajectory::generate(
                initial,
                &EndConstraint::full(n.end.to_state()?),
                n.duration,
            )?),
            None => None,
        };
        let end_min = Vec3::from_array(spec.end_region.min);
        let end_max = Vec3::from_array(spec.end_region.max);
        if !(end_min.x < end_max.x && end_min.y < end_max.y && end_min.z < end_max.z) {
            return Err(BenchError::Config(
                "end_region min must be below max on every axis".into(),
            ));
        }
        let [lo, hi] = spec.duration_range;
        if !(lo > 0.0 && lo < hi && hi.is_finite()) {
            return Err(BenchError::Config(format!(
                "invalid duration_range [{lo}, {hi}]"
            )));
        }
        if !(spec.horizon >= 0.0 && spec.horizon.is_finite()) {
            return Err(BenchError::Config(format!(
                "invalid horizon {}",
                spec.horizon
            )));
        }
        Ok(Self {
            scene,
            initial,
            nominal,
            end_min,
            end_max,
            duration_range: (lo, hi),
            horizon: spec.horizon,
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_spec(&read_json(path)?)
    }

    /// Scene verdict for the nominal trajectory, if there is one.
    pub fn nominal_verdict(&self, cfg: &CheckConfig) -> Option<Verdict> {
        self.nominal.as_ref().map(|n| self.scene.check(n, cfg))
    }

    /// Full check of one candidate without the jerk stage. Used to re-verify
    /// a selection.
    pub fn passes(&self, traj: &QuinticTrajectory, cfg: &CheckConfig) -> bool {
        traj.check_input_feasibility(&InputBounds::quadcopter()) == InputFeasibility::Feasible
            && self.scene.workspace().contains_trajectory(traj)
            && self.scene.check(traj, cfg) == Verdict::Feasible
            && self.parked_verdict(traj, cfg) == Verdict::Feasible
    }

    fn parked_verdict(&self, traj: &QuinticTrajectory, cfg: &CheckConfig) -> Verdict {
        if !self.scene.has_moving() {
            return Verdict::Feasible;
        }
        self.scene.check_parked(
            traj.final_state().position,
            traj.duration(),
            self.horizon,
            cfg,
        )
    }

    /// Dense-sampling re-check of the maneuver and of the parked phase.
    pub fn oracle_clear(&self, traj: &QuinticTrajectory) -> bool {
        self.scene.oracle_check(traj, ORACLE_DT).is_none()
            && self
                .scene
                .oracle_parked(
                    traj.final_state().position,
                    traj.duration(),
                    self.horizon,
                    ORACLE_DT,
                )
                .is_none()
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Rejections {
    pub jerk: u64,
    pub input: u64,
    pub workspace: u64,
    pub collision: u64,
    pub indeterminable: u64,
    pub post_maneuver: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Selection {
    pub trajectory: TrajectorySpec,
    pub end_position: [f64; 3],
    pub duration: f64,
    pub average_jerk_squared: f64,
    /// Candidate index at which this selection was found.
    pub found_at: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AvoidReport {
    pub benchmark: String,
    pub seed: u64,
    pub budget_ms: f64,
    pub elapsed_ms: f64,
    pub candidates: u64,
    pub rejections: Rejections,
    /// Collision verdicts of candidates that reached the collision stage.
    pub collision_counts: VerdictCounts,
    /// Candidates that passed every stage (each improved on the previous).
    pub feasible_found: u64,
    pub outcome: String,
    pub selected: Option<Selection>,
    pub nominal_verdict: Option<String>,
    /// Oracle re-verification of the selection, when requested.
    pub validation: Option<bool>,
    #[serde(skip)]
    pub feasible_costs: Vec<f64>,
    #[serde(skip)]
    pub selected_trajectory: Option<QuinticTrajectory>,
}

fn verdict_name(v: &Verdict) -> &'static str {
    match v {
        Verdict::Feasible => "feasible",
        Verdict::Infeasible { .. } => "infeasible",
        Verdict::Indeterminable => "indeterminable",
    }
}

impl AvoidReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is always serializable")
    }

    pub fn to_csv(&self) -> String {
        let mut m: BTreeMap<&str, f64> = BTreeMap::new();
        m.insert("seed", self.seed as f64);
        m.insert("budget_ms", self.budget_ms);
        m.insert("elapsed_ms", self.elapsed_ms);
        m.insert("candidates", self.candidates as f64);
        m.insert("rejections.jerk", self.rejections.jerk as f64);
        m.insert("rejections.input", self.rejections.input as f64);
        m.insert("rejections.workspace", self.rejections.workspace as f64);
        m.insert("rejections.collision", self.rejections.collision as f64);
        m.insert(
            "rejections.indeterminable",
            self.rejections.indeterminable as f64,
        );
        m.insert(
            "rejections.post_maneuver",
            self.rejections.post_maneuver as f64,
        );
        m.insert("feasible_found", self.feasible_found as f64);
        m.insert("selected", f64::from(u8::from(self.selected.is_some())));
        if let Some(s) = &self.selected {
            m.insert("selected.average_jerk_squared", s.average_jerk_squared);
            m.insert("selected.duration", s.duration);
        }
        if let Some(v) = self.validation {
            m.insert("validation_passed", f64::from(u8::from(v)));
        }
        let mut out = format!("benchmark,{}\nmetric,value\n", self.benchmark);
        for (k, v) in m {
            writeln!(out, "{k},{v}").unwrap();
        }
        out
    }
}

pub fn bench_avoidance_loop(
    scenario: &Scenario,
    budget: Duration,
    seed: u64,
    cfg: &CheckConfig,
) -> AvoidReport {
    let bounds = InputBounds::quadcopter();
    let mut rng = trial_rng(seed, 0);
    let mut rejections = Rejections::default();
    let mut collision_counts = VerdictCounts::default();
    let mut feasible_costs = Vec::new();
    let mut best: Option<(f64, QuinticTrajectory, u64)> = None;
    let mut candidates = 0u64;

    let start = Instant::now();
    loop {
        if candidates.is_multiple_of(CLOCK_STRIDE) && start.elapsed() >= budget {
            break;
        }
        let index = candidates;
        candidates += 1;
        let end = uniform_vec(&mut rng, scenario.end_min, scenario.end_max);
        let duration = rng.gen_range(scenario.duration_range.0..scenario.duration_range.1);
        let traj =
            QuinticTrajectory::generate(scenario.initial, &EndConstraint::at_rest(end), duration)
                .expect("positive duration");

        let cost = traj.average_jerk_squared();
        if best.as_ref().is_some_and(|(b, _, _)| cost >= *b) {
            rejections.jerk += 1;
            continue;
        }
        if traj.check_input_feasibility(&bounds) == InputFeasibility::Infeasible {
            rejections.input += 1;
            continue;
        }
        if !scenario.scene.workspace().contains_trajectory(&traj) {
            rejections.workspace += 1;
            continue;
        }
        let verdict = scenario.scene.check(&traj, cfg);
        collision_counts.record(&verdict);
        match verdict {
            Verdict::Feasible => {}
            Verdict::Infeasible { .. } => {
                rejections.collision += 1;
                continue;
            }
            Verdict::Indeterminable => {
                rejections.indeterminable += 1;
                continue;
            }
        }
        if scenario.parked_verdict(&traj, cfg) != Verdict::Feasible {
            rejections.post_maneuver += 1;
            continue;
        }
        feasible_costs.push(cost);
        best = Some((cost, traj, index));
    }
    let elapsed = start.elapsed();

    let selected = best.as_ref().map(|(cost, traj, index)| Selection {
        trajectory: TrajectorySpec::from_trajectory(traj),
        end_position: traj.final_state().position.to_array(),
        duration: traj.duration(),
        average_jerk_squared: *cost,
        found_at: *index,
    });
    AvoidReport {
        benchmark: "avoidance-loop".into(),
        seed,
        budget_ms: budget.as_secs_f64() * 1e3,
        elapsed_ms: elapsed.as_secs_f64() * 1e3,
        candidates,
        rejections,
        collision_counts,
        feasible_found: feasible_costs.len() as u64,
        outcome: if best.is_some() {
            "selected"
        } else {
            "no_feasible_candidate"
        }
        .into(),
        selected,
        nominal_verdict: scenario
            .nominal_verdict(cfg)
            .map(|v| verdict_name(&v).into()),
        validation: None,
        feasible_costs,
        selected_trajectory: best.map(|(_, t, _)| t),
    }
}

/// Re-checks the selection with the sampling oracle and the exact checker.
/// Returns `None` when nothing was selected.
pub fn validate_selection(
    scenario: &Scenario,
    report: &AvoidReport,
    cfg: &CheckConfig,
) -> Option<bool> {
    report
        .selected_trajectory
        .as_ref()
        .map(|t| scenario.oracle_clear(t) && scenario.passes(t, cfg))
}
