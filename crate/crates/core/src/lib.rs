//! Continuous-time collision detection between quintic (minimum-average-jerk)
//! trajectories and convex obstacles.
//!
//! The modules are generic over the scalar type through [`Real`]; the
//! aliases at the crate root fix it to `f64`, the precision the solver
//! thresholds are tuned for.
//!
//! ```
//! use ccd_core::{collision_check, CheckConfig, EndConstraint, QuinticTrajectory, Sphere, State, Vec3, Verdict};
//!
//! let traj = QuinticTrajectory::generate(
//!     State::at_rest(Vec3::zero()),
//!     &EndConstraint::at_rest(Vec3::new(2.0, 0.0, 0.0)),
//!     1.0,
//! )
//! .unwrap();
//! let sphere = Sphere::new(Vec3::new(1.0, 1.0, 0.0), 0.5).unwrap();
//! assert_eq!(collision_check(&traj, &sphere, &CheckConfig::default()), Verdict::Feasible);
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod collision;
pub mod error;
pub mod geometry;
pub mod obstacles;
pub mod rootfind;
pub mod scalar;
pub mod trajectory;

pub use collision::{
    collision_check, collision_check_dynamic, collision_check_with_stats, oracle_collision_check,
    CheckStats, OracleVerdict,
};
pub use error::{Error, Result};
pub use geometry::plane_signed_distance;
pub use obstacles::{enlarge, relative_trajectory, ConvexRegion};
pub use rootfind::real_roots_in_interval;
pub use scalar::Real;
pub use trajectory::{generate, InputFeasibility};

pub type Vec3 = geometry::Vec3<f64>;
pub type State = geometry::State<f64>;
pub type Plane = geometry::Plane<f64>;
pub type RealPolynomial = rootfind::RealPolynomial<f64>;
pub type QuinticTrajectory = trajectory::QuinticTrajectory<f64>;
pub type EndConstraint = trajectory::EndConstraint<f64>;
pub type InputBounds = trajectory::InputBounds<f64>;
pub type Sphere = obstacles::Sphere<f64>;
pub type OrientedBox = obstacles::OrientedBox<f64>;
pub type Obstacle = obstacles::Obstacle<f64>;
pub type MovingObstacle = obstacles::MovingObstacle<f64>;
pub type Verdict = collision::Verdict<f64>;
pub type CheckConfig = collision::CheckConfig<f64>;
