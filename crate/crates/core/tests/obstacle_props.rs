mod common;

use ccd_core::{relative_trajectory, ConvexRegion, Obstacle, Vec3};
use rand::Rng;

fn exterior_point(rng: &mut rand_chacha::ChaCha8Rng, o: &Obstacle) -> Vec3 {
    loop {
        let q = common::uvec(rng, 8.0);
        if !o.contains(q) {
            return q;
        }
    }
}

#[test]
fn separating_planes_keep_the_obstacle_on_one_side() {
    let mut rng = common::rng(11);
    for _ in 0..10_000 {
        let o = common::random_obstacle(&mut rng);
        let q = exterior_point(&mut rng, &o);
        let plane = o.separating_plane(q).unwrap();
        assert!(plane.signed_distance(q) > 0.0);
        for _ in 0..200 {
            let y = common::interior_point(&mut rng, &o);
            assert!(plane.signed_distance(y) <= 1e-9, "{o:?} q={q:?} y={y:?}");
        }
        if let Obstacle::Box(b) = &o {
            for v in b.vertices() {
                assert!(plane.signed_distance(v) <= 1e-9);
            }
        }
    }
}

#[test]
fn sphere_plane_distance_is_euclidean_distance() {
    let mut rng = common::rng(12);
    for _ in 0..20_000 {
        let s = common::random_sphere(&mut rng);
        let q = exterior_point(&mut rng, &s.into());
        let plane = s.separating_plane(q).unwrap();
        let expected = ((q - s.center()).norm() - s.radius()).abs();
        assert!((plane.signed_distance(q) - expected).abs() <= 1e-9);
    }
}

#[test]
fn box_plane_distance_is_euclidean_distance() {
    let mut rng = common::rng(13);
    for _ in 0..5_000 {
        let b = common::random_box(&mut rng);
        let o: Obstacle = b.into();
        let q = exterior_point(&mut rng, &o);
        let d = o.separating_plane(q).unwrap().signed_distance(q);
        // no interior sample is closer than the closest point
        for _ in 0..200 {
            let y = common::interior_point(&mut rng, &o);
            assert!((q - y).norm() >= d - 1e-9);
        }
    }
}

#[test]
fn enlarging_never_loses_points() {
    let mut rng = common::rng(14);
    for _ in 0..5_000 {
        let o = common::random_obstacle(&mut rng);
        let grown = o.enlarge(rng.gen_range(0.0..1.0)).unwrap();
        assert_eq!(o.enlarge(0.0).unwrap(), o);
        for _ in 0..50 {
            let q = common::uvec(&mut rng, 6.0);
            if o.contains(q) {
                assert!(grown.contains(q));
            }
        }
    }
}

#[test]
fn membership_is_convex() {
    let mut rng = common::rng(15);
    for _ in 0..5_000 {
        let o = common::random_obstacle(&mut rng);
        // shrink slightly so rounding cannot push a boundary point out
        let a = o.center() + (common::interior_point(&mut rng, &o) - o.center()) * 0.999;
        let b = o.center() + (common::interior_point(&mut rng, &o) - o.center()) * 0.999;
        let lambda = rng.gen_range(0.0..=1.0);
        assert!(o.contains(a * lambda + b * (1.0 - lambda)));
    }
}

#[test]
fn relative_trajectory_is_pointwise_difference() {
    let mut rng = common::rng(16);
    for _ in 0..2_000 {
        let traj = common::random_trajectory(&mut rng);
        let moving = common::random_moving(&mut rng);
        let rel = relative_trajectory(&traj, &moving);
        assert_eq!(rel.duration(), traj.duration());
        for k in 0..=50 {
            let t = traj.duration() * k as f64 / 50.0;
            let expected = traj.position(t) - moving.center_at(t);
            let got = rel.position(t);
            assert!(
                (got - expected).max_abs()
                    <= 1e-10 * (1.0 + expected.max_abs() + traj.position(t).max_abs())
            );
        }
    }
}
