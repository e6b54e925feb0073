#![allow(dead_code)]

use ccd_core::{
    EndConstraint, MovingObstacle, Obstacle, OrientedBox, QuinticTrajectory, Sphere, State, Vec3,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn uvec(rng: &mut ChaCha8Rng, half: f64) -> Vec3 {
    Vec3::new(
        rng.gen_range(-half..half),
        rng.gen_range(-half..half),
        rng.gen_range(-half..half),
    )
}

pub fn unit(rng: &mut ChaCha8Rng) -> Vec3 {
    loop {
        let v = uvec(rng, 1.0);
        let n = v.norm();
        if n > 1e-3 && n <= 1.0 {
            return v / n;
        }
    }
}

/// Origin start, states on (-4, 4), duration on (0.2, 4).
pub fn random_trajectory(rng: &mut ChaCha8Rng) -> QuinticTrajectory {
    let initial = State::new(Vec3::zero(), uvec(rng, 4.0), uvec(rng, 4.0)).unwrap();
    let end = State::new(uvec(rng, 4.0), uvec(rng, 4.0), uvec(rng, 4.0)).unwrap();
    let duration = rng.gen_range(0.2..4.0);
    QuinticTrajectory::generate(initial, &EndConstraint::full(end), duration).unwrap()
}

pub fn random_sphere(rng: &mut ChaCha8Rng) -> Sphere {
    let r = rng.gen_range(0.1..1.5);
    Sphere::new(uvec(rng, 4.0), r).unwrap()
}

pub fn random_box(rng: &mut ChaCha8Rng) -> OrientedBox {
    let half = Vec3::new(
        rng.gen_range(0.05..1.5),
        rng.gen_range(0.05..1.5),
        rng.gen_range(0.05..1.5),
    );
    let axis = unit(rng);
    let angle = rng.gen_range(0.0..std::f64::consts::TAU);
    OrientedBox::from_axis_angle(uvec(rng, 4.0), half, axis, angle).unwrap()
}

pub fn random_obstacle(rng: &mut ChaCha8Rng) -> Obstacle {
    if rng.gen_bool(0.5) {
        random_sphere(rng).into()
    } else {
        random_box(rng).into()
    }
}

/// Uniform-ish interior point (boundary included for boxes).
pub fn interior_point(rng: &mut ChaCha8Rng, o: &Obstacle) -> Vec3 {
    match o {
        Obstacle::Sphere(s) => {
            let r = s.radius() * rng.gen_range(0.0f64..=1.0).cbrt();
            ccd_core::ConvexRegion::center(s) + unit(rng) * r
        }
        Obstacle::Box(b) => {
            let h = b.half_extents();
            let [a0, a1, a2] = b.axes();
            ccd_core::ConvexRegion::center(b)
                + a0 * (h.x * rng.gen_range(-1.0..=1.0))
                + a1 * (h.y * rng.gen_range(-1.0..=1.0))
                + a2 * (h.z * rng.gen_range(-1.0..=1.0))
        }
    }
}

/// Moving obstacle: either a ballistic sphere or a random polynomial path
/// of degree up to 5.
pub fn random_moving(rng: &mut ChaCha8Rng) -> MovingObstacle {
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
        OrientedBox::from_axis_angle(Vec3::zero(), half, unit(rng), rng.gen_range(0.0..3.0))
            .unwrap()
            .into()
    };
    if rng.gen_bool(0.5) {
        MovingObstacle::ballistic(
            shape,
            uvec(rng, 4.0),
            uvec(rng, 6.0),
            Vec3::new(0.0, 0.0, -9.81),
        )
        .unwrap()
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
