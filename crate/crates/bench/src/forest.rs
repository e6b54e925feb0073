//! Stopping trajectories through a forest of prisms.
//!
//! Each batch draws 100 rest-ending candidates from a fast forward-moving
//! initial state at (-2.5, 0, 0) and records how long it took to find the
//! first one that is both input feasible and collision free.

use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;

use ccd_core::{
    CheckConfig, EndConstraint, InputBounds, InputFeasibility, QuinticTrajectory, State, Vec3,
    Verdict,
};

use crate::report::{BenchReport, Timing, TimingStats, VerdictCounts};
use crate::rng::{trial_rng, uniform_cube, uniform_vec, TrialRng};
use crate::scene::Scene;

pub const CANDIDATES_PER_BATCH: usize = 100;
pub const INITIAL_POSITION: Vec3 = Vec3::new(-2.5, 0.0, 0.0);
pub const END_HALF_RANGE: f64 = 2.5;
pub const DURATION_RANGE: (f64, f64) = (0.5, 2.0);
/// Collision-free fraction reported for the original layout; informational.
pub const REFERENCE_FRACTION: f64 = 0.602;

/// Initial state shared by the whole batch.
pub fn sample_initial(rng: &mut TrialRng) -> State {
    let velocity = uniform_vec(rng, Vec3::new(2.0, -2.0, -2.0), Vec3::new(8.0, 2.0, 2.0));
    let acceleration = uniform_vec(rng, Vec3::new(4.0, -2.0, -2.0), Vec3::new(10.0, 2.0, 2.0));
    State::new(INITIAL_POSITION, velocity, acceleration).expect("finite draw")
}

pub fn sample_candidate(rng: &mut TrialRng, initial: State) -> QuinticTrajectory {
    let end = uniform_cube(rng, END_HALF_RANGE);
    let duration = rng.gen_range(DURATION_RANGE.0..DURATION_RANGE.1);
    QuinticTrajectory::generate(initial, &EndConstraint::at_rest(end), duration)
        .expect("positive duration")
}

#[derive(Debug, Clone, Default)]
pub struct BatchOutcome {
    pub counts: VerdictCounts,
    pub input_feasible: usize,
    /// Input feasible and collision free.
    pub collision_free: usize,
    /// Microseconds from batch start to the first collision-free candidate.
    pub time_to_first_us: Option<f64>,
    pub generation_us: Vec<f64>,
    pub feasibility_us: Vec<f64>,
    pub collision_us: Vec<f64>,
    /// Collision-free candidates the oracle found in collision.
    pub validation_failures: usize,
}

/// Runs batch `index`. With `validate`, every collision-free candidate is
/// re-checked by dense sampling at `dt = 1e-4` s.
pub fn run_batch(
    scene: &Scene,
    seed: u64,
    index: u64,
    cfg: &CheckConfig,
    validate: bool,
) -> BatchOutcome {
    let bounds = InputBounds::quadcopter();
    let mut rng = trial_rng(seed, index);
    let mut out = BatchOutcome::default();
    let start = Instant::now();
    let initial = sample_initial(&mut rng);
    for _ in 0..CANDIDATES_PER_BATCH {
        let t0 = Instant::now();
        let traj = sample_candidate(&mut rng, initial);
        let t1 = Instant::now();
        let feasible = traj.check_input_feasibility(&bounds) == InputFeasibility::Feasible;
        let t2 = Instant::now();
        out.generation_us.push((t1 - t0).as_secs_f64() * 1e6);
        out.feasibility_us.push((t2 - t1).as_secs_f64() * 1e6);
        if !feasible {
            continue;
        }
        out.input_feasible += 1;
        let verdict = scene.check(&traj, cfg);
        let t3 = Instant::now();
        out.collision_us.push((t3 - t2).as_secs_f64() * 1e6);
        out.counts.record(&verdict);
        if verdict == Verdict::Feasible {
            out.collision_free += 1;
            if out.time_to_first_us.is_none() {
                out.time_to_first_us = Some((t3 - start).as_secs_f64() * 1e6);
            }
            if validate && scene.oracle_check(&traj, 1e-4).is_some() {
                out.validation_failures += 1;
            }
        }
    }
    out
}

pub fn bench_forest_stopping(
    scene: &Scene,
    batches: u64,
    seed: u64,
    cfg: &CheckConfig,
    validate: bool,
) -> BenchReport {
    let outcomes: Vec<BatchOutcome> = (0..batches)
        .into_par_iter()
        .map(|i| run_batch(scene, seed, i, cfg, validate))
        .collect();

    let mut counts = VerdictCounts::default();
    let (mut input_feasible, mut collision_free, mut failures) = (0usize, 0usize, 0usize);
    let mut first = Vec::new();
    let (mut generation, mut feasibility, mut collision) = (Vec::new(), Vec::new(), Vec::new());
    for o in outcomes {
        counts.feasible += o.counts.feasible;
        counts.infeasible += o.counts.infeasible;
        counts.indeterminable += o.counts.indeterminable;
        input_feasible += o.input_feasible;
        collision_free += o.collision_free;
        failures += o.validation_failures;
        first.extend(o.time_to_first_us);
        generation.extend(o.generation_us);
        feasibility.extend(o.feasibility_us);
        collision.extend(o.collision_us);
    }
    let candidates = (batches as usize * CANDIDATES_PER_BATCH) as f64;
    let successes = first.len();
    let timing = Timing {
        generation: TimingStats::from_samples(&mut generation),
        input_feasibility: TimingStats::from_samples(&mut feasibility),
        collision: TimingStats::from_samples(&mut collision),
    };
    let ttf = TimingStats::from_samples(&mut first);

    let mut report = BenchReport::new("forest-stopping", batches, seed, counts, timing);
    report.metric("t_min_s", cfg.t_min());
    report.metric("candidates", candidates);
    report.metric(
        "input_feasible_fraction",
        input_feasible as f64 / candidates,
    );
    report.metric(
        "collision_free_fraction",
        collision_free as f64 / candidates,
    );
    report.metric("reference_collision_free_fraction", REFERENCE_FRACTION);
    report.metric(
        "batch_success_fraction",
        successes as f64 / batches.max(1) as f64,
    );
    report.metric("time_to_first_feasible_mean_us", ttf.mean_us);
    report.metric("time_to_first_feasible_p50_us", ttf.p50_us);
    report.metric("time_to_first_feasible_p99_us", ttf.p99_us);
    if validate {
        report.metric("validation_failures", failures as f64);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scene::Workspace;

    fn empty_scene() -> Scene {
        Scene::new(
            Workspace::new(Vec3::splat(-10.0), Vec3::splat(10.0)).unwrap(),
            0.0,
            Vec::new(),
        )
        .unwrap()
    }

    #[test]
    fn initial_state_follows_the_ranges() {
        let mut rng = trial_rng(5, 0);
        for _ in 0..200 {
            let s = sample_initial(&mut rng);
            assert_eq!(s.position, INITIAL_POSITION);
            assert!(
                (2.0..8.0).contains(&s.velocity.x)
                    && s.velocity.y.abs() < 2.0
                    && s.velocity.z.abs() < 2.0
            );
            assert!((4.0..10.0).contains(&s.acceleration.x) && s.acceleration.y.abs() < 2.0);
        }
    }

    #[test]
    fn batch_outcome_is_consistent() {
        let o = run_batch(&empty_scene(), 1, 0, &CheckConfig::default(), true);
        assert_eq!(o.generation_us.len(), CANDIDATES_PER_BATCH);
        assert_eq!(o.counts.total() as usize, o.input_feasible);
        assert_eq!(o.collision_free, o.input_feasible);
        assert_eq!(o.time_to_first_us.is_some(), o.collision_free > 0);
        assert_eq!(o.validation_failures, 0);
    }
}
