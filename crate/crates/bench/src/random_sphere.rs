//! Random trajectories against a single random sphere.
//!
//! Trajectories start at the origin; final position, initial and final
//! velocity and acceleration are uniform on (-4, 4) per axis, durations on
//! (0.2, 4) s. Candidates failing the input bounds are
//! redrawn, so every trial ends in a collision check. Spheres have radius
//! on (0.1, 1.5) m and center uniform on (-4, 4) per axis.

use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;

use ccd_core::{
    collision_check, oracle_collision_check, CheckConfig, EndConstraint, InputBounds,
    InputFeasibility, QuinticTrajectory, Sphere, State, Vec3, Verdict,
};

use crate::report::{BenchReport, Timing, TimingStats, VerdictCounts};
use crate::rng::{trial_rng, uniform_cube, TrialRng};

pub const STATE_HALF_RANGE: f64 = 4.0;
pub const DURATION_RANGE: (f64, f64) = (0.2, 4.0);
pub const RADIUS_RANGE: (f64, f64) = (0.1, 1.5);

/// Draws one candidate trajectory (not yet filtered by input bounds).
pub fn sample_trajectory(rng: &mut TrialRng) -> QuinticTrajectory {
    let v0 = uniform_cube(rng, STATE_HALF_RANGE);
    let a0 = uniform_cube(rng, STATE_HALF_RANGE);
    let pf = uniform_cube(rng, STATE_HALF_RANGE);
    let vf = uniform_cube(rng, STATE_HALF_RANGE);
    let af = uniform_cube(rng, STATE_HALF_RANGE);
    let duration = rng.gen_range(DURATION_RANGE.0..DURATION_RANGE.1);
    let initial = State::new(Vec3::zero(), v0, a0).expect("finite draw");
    let end = EndConstraint::full(State::new(pf, vf, af).expect("finite draw"));
    QuinticTrajectory::generate(initial, &end, duration).expect("positive duration")
}

pub fn sample_sphere(rng: &mut TrialRng) -> Sphere {
    let radius = rng.gen_range(RADIUS_RANGE.0..RADIUS_RANGE.1);
    let center = uniform_cube(rng, STATE_HALF_RANGE);
    Sphere::new(center, radius).expect("positive radius")
}

/// One input-feasible trajectory and its sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Trial {
    pub trajectory: QuinticTrajectory,
    pub sphere: Sphere,
    /// Input-infeasible candidates drawn before this one.
    pub rejected: u32,
    generation_us: f64,
    feasibility_us: f64,
}

/// Trial `index` of the run seeded with `seed`.
pub fn draw_trial(seed: u64, index: u64, bounds: &InputBounds) -> Trial {
    let mut rng = trial_rng(seed, index);
    let mut rejected = 0;
    loop {
        let t0 = Instant::now();
        let trajectory = sample_trajectory(&mut rng);
        let t1 = Instant::now();
        let feasible = trajectory.check_input_feasibility(bounds) == InputFeasibility::Feasible;
        let t2 = Instant::now();
        if feasible {
            return Trial {
                trajectory,
                sphere: sample_sphere(&mut rng),
                rejected,
                generation_us: (t1 - t0).as_secs_f64() * 1e6,
                feasibility_us: (t2 - t1).as_secs_f64() * 1e6,
            };
        }
        rejected += 1;
    }
}

struct Outcome {
    verdict: Verdict,
    rejected: u32,
    generation_us: f64,
    feasibility_us: f64,
    collision_us: f64,
}

pub fn bench_random_sphere(trials: u64, seed: u64, cfg: &CheckConfig) -> BenchReport {
    let bounds = InputBounds::quadcopter();
    let outcomes: Vec<Outcome> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let trial = draw_trial(seed, i, &bounds);
            let t0 = Instant::now();
            let verdict = collision_check(&trial.trajectory, &trial.sphere, cfg);
            let collision_us = t0.elapsed().as_secs_f64() * 1e6;
            Outcome {
                verdict,
                rejected: trial.rejected,
                generation_us: trial.generation_us,
                feasibility_us: trial.feasibility_us,
                collision_us,
            }
        })
        .collect();

    let mut counts = VerdictCounts::default();
    let mut rejected = 0u64;
    for o in &outcomes {
        counts.record(&o.verdict);
        rejected += u64::from(o.rejected);
    }
    let stage = |f: fn(&Outcome) -> f64| {
        let mut v: Vec<f64> = outcomes.iter().map(f).collect();
        TimingStats::from_samples(&mut v)
    };
    let timing = Timing {
        generation: stage(|o| o.generation_us),
        input_feasibility: stage(|o| o.feasibility_us),
        collision: stage(|o| o.collision_us),
    };
    let mut report = BenchReport::new("random-sphere", trials, seed, counts, timing);
    report.metric("t_min_s", cfg.t_min());
    report.metric("input_infeasible_draws", rejected as f64);
    let drawn = rejected + trials;
    if drawn > 0 {
        report.metric("input_feasible_fraction", trials as f64 / drawn as f64);
    }
    report
}

/// Trial indices whose Feasible verdict the sampling oracle contradicts at
/// step `dt`.
pub fn oracle_mismatches(trials: u64, seed: u64, cfg: &CheckConfig, dt: f64) -> Vec<u64> {
    let bounds = InputBounds::quadcopter();
    (0..trials)
        .into_par_iter()
        .filter(|&i| {
            let trial = draw_trial(seed, i, &bounds);
            collision_check(&trial.trajectory, &trial.sphere, cfg) == Verdict::Feasible
                && !oracle_collision_check(&trial.trajectory, &trial.sphere, dt)
                    .expect("positive step")
                    .is_clear()
        })
        .collect()
}
