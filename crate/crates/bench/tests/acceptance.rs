//! Acceptance checks at full scale. Prints one PASS/FAIL line per criterion
//! and exits non-zero if any fails.

use std::time::{Duration, Instant};

use rand::Rng;

use ccd_bench::avoid::{bench_avoidance_loop, validate_selection, Scenario};
use ccd_bench::forest::bench_forest_stopping;
use ccd_bench::random_sphere::{bench_random_sphere, draw_trial};
use ccd_bench::rng::{trial_rng, uniform_cube};
use ccd_bench::scene::Scene;
use ccd_core::{
    collision_check, collision_check_dynamic, oracle_collision_check, real_roots_in_interval,
    relative_trajectory, CheckConfig, ConvexRegion, EndConstraint, InputBounds, MovingObstacle,
    Obstacle, OrientedBox, QuinticTrajectory, RealPolynomial, Sphere, State, Vec3, Verdict,
};

const SEED: u64 = 20_160_916;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn data(path: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(path)
}

/// Feasible verdicts against the dense sampling oracle, plus a finer probe
/// around the closest sampled approach.
fn oracle_soundness() -> Outcome {
    const PAIRS: u64 = 100_000;
    const DT: f64 = 1e-4;
    let cfg = CheckConfig::default();
    let bounds = InputBounds::quadcopter();
    let start = Instant::now();
    let (mut feasible, mut contradicted, mut probed) = (0u64, 0u64, 0u64);
    let mut deepest = 0.0f64;
    for i in 0..PAIRS {
        let trial = draw_trial(SEED, i, &bounds);
        let (traj, sphere) = (trial.trajectory, trial.sphere);
        if collision_check(&traj, &sphere, &cfg) != Verdict::Feasible {
            continue;
        }
        feasible += 1;
        if !oracle_collision_check(&traj, &sphere, DT)
            .unwrap()
            .is_clear()
        {
            contradicted += 1;
        }
        let clearance = |t: f64| (traj.position(t) - sphere.center()).norm() - sphere.radius();
        let n = (traj.duration() / DT).floor() as usize;
        let (mut t_best, mut c_best) = (0.0, f64::INFINITY);
        for k in 0..=n {
            let t = k as f64 * DT;
            let c = clearance(t);
            if c < c_best {
                (t_best, c_best) = (t, c);
            }
        }
        if c_best < 1e-3 {
            probed += 1;
            for k in -1000..=1000 {
                let t = (t_best + k as f64 * DT / 1000.0).clamp(0.0, traj.duration());
                deepest = deepest.max(-clearance(t));
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        contradicted == 0 && deepest <= 1e-6 && elapsed < Duration::from_secs(300),
        format!(
            "{PAIRS} pairs, {feasible} feasible, {contradicted} contradicted, {probed} near-tangent probed, \
             max penetration {deepest:.2e} m, {elapsed:.1?}"
        ),
    )
}

fn table_fractions() -> (Outcome, Outcome) {
    let start = Instant::now();
    let r = bench_random_sphere(1_000_000, SEED, &CheckConfig::default());
    let elapsed = start.elapsed();
    let f = r.fractions;
    let pass = (f.feasible - 0.9599).abs() <= 0.01
        && (f.infeasible - 0.0401).abs() <= 0.01
        && f.indeterminable < 0.001
        && elapsed < Duration::from_secs(60);
    let fractions = outcome(
        pass,
        format!(
            "feasible {:.4}%, infeasible {:.4}%, indeterminable {:.4}%, {elapsed:.1?}",
            100.0 * f.feasible,
            100.0 * f.infeasible,
            100.0 * f.indeterminable
        ),
    );
    let mean = r.timing.collision.mean_us;
    let timing = outcome(
        mean < 50.0,
        format!(
            "mean collision check {mean:.3} us (p99 {:.3} us)",
            r.timing.collision.p99_us
        ),
    );
    (fractions, timing)
}

fn forest_pipeline() -> Outcome {
    let scene = Scene::load(&data("forest.json")).unwrap();
    let cfg = CheckConfig::default();
    let mut worst_success = 1.0f64;
    let mut worst_ttf = 0.0f64;
    let mut fractions = Vec::new();
    for seed in 0..10 {
        let r = bench_forest_stopping(&scene, 10_000, SEED + seed, &cfg, false);
        worst_success = worst_success.min(r.metrics["batch_success_fraction"]);
        worst_ttf = worst_ttf.max(r.metrics["time_to_first_feasible_mean_us"]);
        fractions.push(r.metrics["collision_free_fraction"]);
    }
    let lo = fractions.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = fractions.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    outcome(
        worst_success > 0.99 && worst_ttf < 500.0 && hi - lo < 0.01,
        format!(
            "10 seeds x 10^4 batches: min success {:.2}%, max mean time-to-first {worst_ttf:.2} us, \
             collision-free {:.2}%..{:.2}% (spread {:.3} pp)",
            100.0 * worst_success,
            100.0 * lo,
            100.0 * hi,
            100.0 * (hi - lo)
        ),
    )
}

fn root_solver() -> Outcome {
    const QUARTICS: usize = 1_000_000;
    const GRID: usize = 10_000;
    let mut rng = trial_rng(SEED, 5);
    let xs: Vec<f64> = (0..=GRID).map(|k| k as f64 / GRID as f64).collect();
    let mut vals = vec![0.0; GRID + 1];
    let (mut bad_residual, mut missing, mut brackets, mut roots_seen) = (0u64, 0u64, 0u64, 0u64);
    let start = Instant::now();
    for _ in 0..QUARTICS {
        let c: [f64; 5] = std::array::from_fn(|_| rng.gen_range(-10.0..10.0));
        let p = RealPolynomial::new(c).unwrap();
        let roots = real_roots_in_interval(&p, 0.0, 1.0).unwrap();
        roots_seen += roots.len() as u64;
        let bound = p.residual_bound(1.0);
        bad_residual += roots.iter().filter(|r| p.eval(**r).abs() > bound).count() as u64;
        for (v, &x) in vals.iter_mut().zip(&xs) {
            *v = (((c[4] * x + c[3]) * x + c[2]) * x + c[1]) * x + c[0];
        }
        for k in 0..GRID {
            if (vals[k] < 0.0) != (vals[k + 1] < 0.0) || vals[k] == 0.0 {
                brackets += 1;
                if !roots
                    .iter()
                    .any(|r| *r >= xs[k] - 1e-9 && *r <= xs[k + 1] + 1e-9)
                {
                    missing += 1;
                }
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        bad_residual == 0 && missing == 0 && elapsed < Duration::from_secs(30),
        format!(
            "{QUARTICS} quartics on [0, 1]: {roots_seen} roots, {bad_residual} over residual bound, \
             {missing}/{brackets} sign changes unmatched, {elapsed:.1?}"
        ),
    )
}

fn boundary_values() -> Outcome {
    let mut rng = trial_rng(SEED, 6);
    let (mut boundary_fail, mut derivative_fail) = (0u64, 0u64);
    let rel = |a: Vec3, b: Vec3| (a - b).max_abs() / (1.0 + b.max_abs());
    for _ in 0..100_000 {
        let initial = State::new(
            uniform_cube(&mut rng, 10.0),
            uniform_cube(&mut rng, 8.0),
            uniform_cube(&mut rng, 8.0),
        )
        .unwrap();
        let end = State::new(
            uniform_cube(&mut rng, 10.0),
            uniform_cube(&mut rng, 8.0),
            uniform_cube(&mut rng, 8.0),
        )
        .unwrap();
        let duration = rng.gen_range(0.1..5.0);
        let traj =
            QuinticTrajectory::generate(initial, &EndConstraint::full(end), duration).unwrap();
        let s0 = traj.state(0.0);
        let s1 = traj.final_state();
        let worst = [
            rel(s0.position, initial.position),
            rel(s0.velocity, initial.velocity),
            rel(s0.acceleration, initial.acceleration),
            rel(s1.position, end.position),
            rel(s1.velocity, end.velocity),
            rel(s1.acceleration, end.acceleration),
        ]
        .into_iter()
        .fold(0.0, f64::max);
        if worst > 1e-9 {
            boundary_fail += 1;
        }

        let t = rng.gen_range(0.0..duration);
        // Richardson-extrapolated central difference: the h² error term of a
        // plain difference grows with alpha and swamps 1e-6 for short T
        let central = |f: &dyn Fn(f64) -> Vec3, h: f64| (f(t + h) - f(t - h)) / (2.0 * h);
        let fd = |f: &dyn Fn(f64) -> Vec3| (central(f, 5e-6) * 4.0 - central(f, 1e-5)) / 3.0;
        let scale = 1.0
            + traj.position(t).max_abs()
            + traj.velocity(t).max_abs()
            + traj.acceleration(t).max_abs()
            + traj.jerk(t).max_abs();
        let err = (fd(&|s| traj.position(s)) - traj.velocity(t))
            .max_abs()
            .max((fd(&|s| traj.velocity(s)) - traj.acceleration(t)).max_abs())
            .max((fd(&|s| traj.acceleration(s)) - traj.jerk(t)).max_abs());
        if err > 1e-6 * scale {
            derivative_fail += 1;
        }
    }
    outcome(
        boundary_fail == 0 && derivative_fail == 0,
        format!("10^5 trajectories: {boundary_fail} boundary misses at 1e-9, {derivative_fail} derivative misses at 1e-6"),
    )
}

fn random_moving(rng: &mut impl Rng) -> MovingObstacle {
    let shape: Obstacle = if rng.gen_bool(0.7) {
        Sphere::new(Vec3::zero(), rng.gen_range(0.1..1.0))
            .unwrap()
            .into()
    } else {
        let half = Vec3::new(
            rng.gen_range(0.1..0.8),
            rng.gen_range(0.1..0.8),
            rng.gen_range(0.1..0.8),
        );
        let axis = Vec3::new(
            rng.gen_range(0.1..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        );
        OrientedBox::from_axis_angle(Vec3::zero(), half, axis, rng.gen_range(0.0..3.0))
            .unwrap()
            .into()
    };
    if rng.gen_bool(0.5) {
        let p0 = Vec3::new(
            rng.gen_range(-4.0..4.0),
            rng.gen_range(-4.0..4.0),
            rng.gen_range(-4.0..4.0),
        );
        let v0 = Vec3::new(
            rng.gen_range(-6.0..6.0),
            rng.gen_range(-6.0..6.0),
            rng.gen_range(-6.0..6.0),
        );
        MovingObstacle::ballistic(shape, p0, v0, Vec3::new(0.0, 0.0, -9.81)).unwrap()
    } else {
        let mut coeffs = [[0.0; 6]; 3];
        for axis in &mut coeffs {
            for (k, c) in axis.iter_mut().enumerate() {
                *c = rng.gen_range(-4.0..4.0) / (1 << k) as f64;
            }
        }
        MovingObstacle::new(shape, coeffs).unwrap()
    }
}

fn dynamic_equivalence() -> Outcome {
    let bounds = InputBounds::quadcopter();
    let cfg = CheckConfig::default();
    let mut rng = trial_rng(SEED, 7);
    let (mut agree, mut disagree, mut indeterminable, mut ballistic) = (0u64, 0u64, 0u64, 0u64);
    for i in 0..1_000 {
        let traj = draw_trial(SEED + 7, i, &bounds).trajectory;
        let moving = random_moving(&mut rng);
        if moving
            .coeffs()
            .iter()
            .all(|a| a[3..].iter().all(|c| *c == 0.0))
        {
            ballistic += 1;
        }
        let r_q = rng.gen_range(0.0..0.3);
        let verdict = collision_check_dynamic(&traj, &moving, r_q, &cfg).unwrap();
        let shape = moving.shape().enlarge(r_q).unwrap();
        let clear = oracle_collision_check(&relative_trajectory(&traj, &moving), &shape, 1e-4)
            .unwrap()
            .is_clear();
        match verdict {
            Verdict::Indeterminable => indeterminable += 1,
            v if v.is_feasible() == clear => agree += 1,
            _ => disagree += 1,
        }
    }
    outcome(
        disagree == 0,
        format!("10^3 instances ({ballistic} ballistic): {agree} agree, {disagree} disagree, {indeterminable} indeterminable"),
    )
}

fn avoidance_loop() -> Outcome {
    let cfg = CheckConfig::default();
    let mut pass = true;
    let mut parts = Vec::new();
    for name in ["surface", "projectile"] {
        let scenario = Scenario::load(&data(&format!("scenarios/{name}.json"))).unwrap();
        let mut fewest = u64::MAX;
        let mut validated = 0;
        let runs = 5;
        for seed in 0..runs {
            let r = bench_avoidance_loop(&scenario, Duration::from_millis(15), SEED + seed, &cfg);
            fewest = fewest.min(r.candidates);
            if validate_selection(&scenario, &r, &cfg) == Some(true) {
                validated += 1;
            }
        }
        pass &= fewest > 1_000 && validated == runs;
        parts.push(format!(
            "{name}: min {fewest} candidates, {validated}/{runs} selections validated"
        ));
    }
    outcome(pass, format!("15 ms budget; {}", parts.join("; ")))
}

fn main() {
    let mut results: Vec<(u32, &str, Outcome)> = Vec::new();
    results.push((1, "oracle soundness", oracle_soundness()));
    let (fractions, timing) = table_fractions();
    results.push((2, "random-sphere verdict fractions", fractions));
    results.push((3, "collision check timing", timing));
    results.push((4, "forest stopping pipeline", forest_pipeline()));
    results.push((5, "root solver completeness", root_solver()));
    results.push((6, "boundary values and derivatives", boundary_values()));
    results.push((7, "dynamic obstacle equivalence", dynamic_equivalence()));
    results.push((8, "avoidance loop", avoidance_loop()));

    let mut failed = 0;
    for (n, name, o) in &results {
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("{tag} criterion {n}: {name}: {}", o.detail);
        failed += usize::from(!o.pass);
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all {} criteria passed", results.len());
}
