//! Scene, scenario and trajectory files.
//!
//! Scenes are JSON objects:
//!
//! ```json
//! {
//!   "workspace": { "min": [-1.7, -2.7, 0.0], "max": [1.7, 2.7, 3.1] },
//!   "vehicle_radius": 0.15,
//!   "obstacles": [
//!     { "type": "sphere", "center": [0, 0, 1], "radius": 0.5 },
//!     { "type": "box", "center": [1, 0, 1], "half_extents": [0.2, 0.2, 1.5],
//!       "axis_angle": { "axis": [1, 0, 0], "angle_deg": 10 } },
//!     { "type": "moving", "shape": { "type": "sphere", "radius": 0.4 },
//!       "coeffs": [[3, -4], [0], [1, 5, -4.905]] }
//!   ]
//! }
//! ```
//!
//! Box orientation is given either as `orientation` (rows are the body axes
//! in the inertial frame) or as `axis_angle`; the default is axis aligned.
//! Moving obstacles list per-axis center coefficients `c0..c5` (SI units,
//! seconds) and a shape centered at the origin.

use std::fs;
use std::path::Path;

use serde::{de::DeserializeOwned, Deserialize, Serialize};

use ccd_core::{
    collision_check, collision_check_dynamic, oracle_collision_check, relative_trajectory,
    CheckConfig, EndConstraint, MovingObstacle, Obstacle, OracleVerdict, OrientedBox,
    QuinticTrajectory, Sphere, State, Vec3, Verdict,
};

use crate::error::{BenchError, Result};

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|source| BenchError::Io {
        path: path.to_owned(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| BenchError::Parse {
        path: path.to_owned(),
        source,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WorkspaceSpec {
    pub min: [f64; 3],
    pub max: [f64; 3],
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AxisAngle {
    pub axis: [f64; 3],
    pub angle_deg: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum ObstacleSpec {
    Sphere {
        #[serde(default)]
        center: [f64; 3],
        radius: f64,
    },
    #[serde(rename = "box")]
    Cuboid {
        #[serde(default)]
        center: [f64; 3],
        half_extents: [f64; 3],
        #[serde(default, skip_serializing_if = "Option::is_none")]
        orientation: Option<[[f64; 3]; 3]>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        axis_angle: Option<AxisAngle>,
    },
    Moving {
        shape: Box<ObstacleSpec>,
        coeffs: Vec<Vec<f64>>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SceneSpec {
    pub workspace: WorkspaceSpec,
    #[serde(default)]
    pub vehicle_radius: f64,
    #[serde(default)]
    pub obstacles: Vec<ObstacleSpec>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SceneObstacle {
    Static(Obstacle),
    Moving(MovingObstacle),
}

/// Axis-aligned box the vehicle must stay in.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Workspace {
    pub min: Vec3,
    pub max: Vec3,
}

impl Workspace {
    pub fn new(min: Vec3, max: Vec3) -> Result<Self> {
        if !(min.x < max.x && min.y < max.y && min.z < max.z) {
            return Err(BenchError::Config(format!(
                "workspace min {min:?} must be below max {max:?} on every axis"
            )));
        }
        Ok(Self { min, max })
    }

    /// Exact: uses the trajectory's extremal positions.
    pub fn contains_trajectory(&self, traj: &QuinticTrajectory) -> bool {
        let (lo, hi) = traj.position_bounds();
        lo.x >= self.min.x
            && lo.y >= self.min.y
            && lo.z >= self.min.z
            && hi.x <= self.max.x
            && hi.y <= self.max.y
            && hi.z <= self.max.z
    }
}

/// Validated scene. Static obstacles are stored already grown by the
/// vehicle radius.
#[derive(Debug, Clone, PartialEq)]
pub struct Scene {
    workspace: Workspace,
    vehicle_radius: f64,
    obstacles: Vec<SceneObstacle>,
    grown: Vec<SceneObstacle>,
}

fn vec3(a: [f64; 3]) -> Vec3 {
    Vec3::new(a[0], a[1], a[2])
}

fn build_shape(spec: &ObstacleSpec) -> Result<Obstacle> {
    match spec {
        ObstacleSpec::Sphere { center, radius } => Ok(Sphere::new(vec3(*center), *radius)?.into()),
        ObstacleSpec::Cuboid {
            center,
            half_extents,
            orientation,
            axis_angle,
        } => {
            let b = match (orientation, axis_angle) {
                (Some(_), Some(_)) => {
                    return Err(BenchError::Config(
                        "box takes either orientation or axis_angle, not both".into(),
                    ))
                }
                (Some(rows), None) => {
                    OrientedBox::new(vec3(*center), vec3(*half_extents), rows.map(vec3))?
                }
                (None, Some(aa)) => OrientedBox::from_axis_angle(
                    vec3(*center),
                    vec3(*half_extents),
                    vec3(aa.axis),
                    aa.angle_deg.to_radians(),
                )?,
                (None, None) => OrientedBox::axis_aligned(vec3(*center), vec3(*half_extents))?,
            };
            Ok(b.into())
        }
        ObstacleSpec::Moving { .. } => Err(BenchError::Config(
            "moving obstacle shapes cannot be moving".into(),
        )),
    }
}

impl SceneObstacle {
    pub fn from_spec(spec: &ObstacleSpec) -> Result<Self> {
        match spec {
            ObstacleSpec::Moving { shape, coeffs } => {
                if coeffs.len() != 3 {
                    return Err(BenchError::Config(format!(
                        "moving obstacle needs coefficients for 3 axes, got {}",
                        coeffs.len()
                    )));
                }
                let shape = build_shape(shape)?;
                let moving =
                    MovingObstacle::from_slices(shape, [&coeffs[0], &coeffs[1], &coeffs[2]])?;
                Ok(SceneObstacle::Moving(moving))
            }
            other => Ok(SceneObstacle::Static(build_shape(other)?)),
        }
    }
}

impl Scene {
    pub fn new(
        workspace: Workspace,
        vehicle_radius: f64,
        obstacles: Vec<SceneObstacle>,
    ) -> Result<Self> {
        if !(vehicle_radius >= 0.0 && vehicle_radius.is_finite()) {
            return Err(BenchError::Config(format!(
                "vehicle_radius must be >= 0, got {vehicle_radius}"
            )));
        }
        let grown = obstacles
            .iter()
            .map(|o| match o {
                SceneObstacle::Static(s) => s.enlarge(vehicle_radius).map(SceneObstacle::Static),
                SceneObstacle::Moving(m) => Ok(SceneObstacle::Moving(*m)),
            })
            .collect::<ccd_core::Result<Vec<_>>>()?;
        Ok(Self {
            workspace,
            vehicle_radius,
            obstacles,
            grown,
        })
    }

    pub fn from_spec(spec: &SceneSpec) -> Result<Self> {
        let workspace = Workspace::new(vec3(spec.workspace.min), vec3(spec.workspace.max))?;
        let obstacles = spec
            .obstacles
            .iter()
            .map(SceneObstacle::from_spec)
            .collect::<Result<Vec<_>>>()?;
        Self::new(workspace, spec.vehicle_radius, obstacles)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_spec(&read_json(path)?)
    }

    pub fn workspace(&self) -> &Workspace {
        &self.workspace
    }

    pub fn vehicle_radius(&self) -> f64 {
        self.vehicle_radius
    }

    pub fn obstacles(&self) -> &[SceneObstacle] {
        &self.obstacles
    }

    fn check_one(
        &self,
        grown: &SceneObstacle,
        traj: &QuinticTrajectory,
        cfg: &CheckConfig,
    ) -> Verdict {
        match grown {
            SceneObstacle::Static(o) => collision_check(traj, o, cfg),
            SceneObstacle::Moving(m) => collision_check_dynamic(traj, m, self.vehicle_radius, cfg)
                .expect("radius validated at construction"),
        }
    }

    /// Verdict against each obstacle, in file order.
    pub fn check_each(&self, traj: &QuinticTrajectory, cfg: &CheckConfig) -> Vec<Verdict> {
        self.grown
            .iter()
            .map(|o| self.check_one(o, traj, cfg))
            .collect()
    }

    /// Combined verdict: infeasible if any obstacle is hit, otherwise
    /// indeterminable if any check was, otherwise feasible. Returns at the
    /// first hit.
    pub fn check(&self, traj: &QuinticTrajectory, cfg: &CheckConfig) -> Verdict {
        let mut combined = Verdict::Feasible;
        for o in &self.grown {
            match self.check_one(o, traj, cfg) {
                v @ Verdict::Infeasible { .. } => return v,
                Verdict::Indeterminable => combined = Verdict::Indeterminable,
                Verdict::Feasible => {}
            }
        }
        combined
    }

    /// Dense-sampling reference check; returns the first obstacle index and
    /// time found in collision.
    pub fn oracle_check(&self, traj: &QuinticTrajectory, dt: f64) -> Option<(usize, f64)> {
        for (i, o) in self.grown.iter().enumerate() {
            let hit = match o {
                SceneObstacle::Static(s) => oracle_collision_check(traj, s, dt),
                SceneObstacle::Moving(m) => {
                    let shape = m
                        .shape()
                        .enlarge(self.vehicle_radius)
                        .expect("validated radius");
                    oracle_collision_check(&relative_trajectory(traj, m), &shape, dt)
                }
            }
            .expect("positive oracle step");
            if let OracleVerdict::Hit(t) = hit {
                return Some((i, t));
            }
        }
        None
    }

    pub fn has_moving(&self) -> bool {
        self.obstacles
            .iter()
            .any(|o| matches!(o, SceneObstacle::Moving(_)))
    }

    /// Checks that a vehicle parked at `position` from `t_start` until
    /// `horizon` is not hit by any moving obstacle.
    pub fn check_parked(
        &self,
        position: Vec3,
        t_start: f64,
        horizon: f64,
        cfg: &CheckConfig,
    ) -> Verdict {
        if horizon <= t_start {
            return Verdict::Feasible;
        }
        let parked =
            QuinticTrajectory::stationary(position, horizon - t_start).expect("positive duration");
        let mut combined = Verdict::Feasible;
        for o in &self.grown {
            if let SceneObstacle::Moving(m) = o {
                let shifted = m.time_shifted(t_start);
                match collision_check_dynamic(&parked, &shifted, self.vehicle_radius, cfg)
                    .expect("validated radius")
                {
                    v @ Verdict::Infeasible { .. } => return v,
                    Verdict::Indeterminable => combined = Verdict::Indeterminable,
                    Verdict::Feasible => {}
                }
            }
        }
        combined
    }

    /// Oracle counterpart of [`Scene::check_parked`].
    pub fn oracle_parked(
        &self,
        position: Vec3,
        t_start: f64,
        horizon: f64,
        dt: f64,
    ) -> Option<(usize, f64)> {
        if horizon <= t_start {
            return None;
        }
        let parked =
            QuinticTrajectory::stationary(position, horizon - t_start).expect("positive duration");
        for (i, o) in self.grown.iter().enumerate() {
            if let SceneObstacle::Moving(m) = o {
                let shifted = m.time_shifted(t_start);
                let shape = m
                    .shape()
                    .enlarge(self.vehicle_radius)
                    .expect("validated radius");
                let rel = relative_trajectory(&parked, &shifted);
                if let OracleVerdict::Hit(t) =
                    oracle_collision_check(&rel, &shape, dt).expect("positive step")
                {
                    return Some((i, t_start + t));
                }
            }
        }
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct StateSpec {
    pub position: [f64; 3],
    #[serde(default)]
    pub velocity: [f64; 3],
    #[serde(default)]
    pub acceleration: [f64; 3],
}

impl StateSpec {
    pub fn to_state(&self) -> Result<State> {
        Ok(State::new(
            vec3(self.position),
            vec3(self.velocity),
            vec3(self.acceleration),
        )?)
    }

    pub fn from_state(s: &State) -> Self {
        Self {
            position: s.position.to_array(),
            velocity: s.velocity.to_array(),
            acceleration: s.acceleration.to_array(),
        }
    }
}

/// A trajectory file: either explicit jerk coefficients or boundary states.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TrajectorySpec {
    Coefficients {
        initial: StateSpec,
        duration: f64,
        alpha: [f64; 3],
        beta: [f64; 3],
        gamma: [f64; 3],
    },
    Endpoints {
        initial: StateSpec,
        end: StateSpec,
        duration: f64,
    },
}

impl TrajectorySpec {
    pub fn build(&self) -> Result<QuinticTrajectory> {
        match self {
            TrajectorySpec::Coefficients {
                initial,
                duration,
                alpha,
                beta,
                gamma,
            } => Ok(QuinticTrajectory::new(
                vec3(*alpha),
                vec3(*beta),
                vec3(*gamma),
                initial.to_state()?,
                *duration,
            )?),
            TrajectorySpec::Endpoints {
                initial,
                end,
                duration,
            } => Ok(QuinticTrajectory::generate(
                initial.to_state()?,
                &EndConstraint::full(end.to_state()?),
                *duration,
            )?),
        }
    }

    pub fn from_trajectory(traj: &QuinticTrajectory) -> Self {
        TrajectorySpec::Coefficients {
            initial: StateSpec::from_state(&traj.initial()),
            duration: traj.duration(),
            alpha: traj.alpha().to_array(),
            beta: traj.beta().to_array(),
            gamma: traj.gamma().to_array(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scene_json(obstacles: &str) -> String {
        format!(
            r#"{{"workspace": {{"min": [-5, -5, -5], "max": [5, 5, 5]}}, "vehicle_radius": 0.1, "obstacles": [{obstacles}]}}"#
        )
    }

    fn parse(text: &str) -> Result<Scene> {
        let spec: SceneSpec = serde_json::from_str(text).map_err(|source| BenchError::Parse {
            path: "<inline>".into(),
            source,
        })?;
        Scene::from_spec(&spec)
    }

    #[test]
    fn parses_every_obstacle_kind() {
        let scene = parse(&scene_json(
            r#"{"type": "sphere", "center": [0, 0, 1], "radius": 0.5},
               {"type": "box", "center": [1, 0, 1], "half_extents": [0.2, 0.2, 1.5], "axis_angle": {"axis": [1, 0, 0], "angle_deg": 10}},
               {"type": "box", "half_extents": [1, 1, 1], "orientation": [[0, 1, 0], [-1, 0, 0], [0, 0, 1]]},
               {"type": "moving", "shape": {"type": "sphere", "radius": 0.4}, "coeffs": [[3, -4], [0], [1, 5, -4.905]]}"#,
        ))
        .unwrap();
        assert_eq!(scene.obstacles().len(), 4);
        assert!(scene.has_moving());
        match scene.obstacles()[3] {
            SceneObstacle::Moving(m) => {
                assert!((m.center_at(1.0) - Vec3::new(-1.0, 0.0, 1.095)).max_abs() < 1e-12)
            }
            _ => panic!("expected moving obstacle"),
        }
    }

    #[test]
    fn rejects_bad_scenes() {
        assert!(parse(&scene_json(r#"{"type": "sphere", "radius": -1}"#)).is_err());
        assert!(parse(&scene_json(r#"{"type": "cone", "radius": 1}"#)).is_err());
        assert!(parse(&scene_json(
            r#"{"type": "moving", "shape": {"type": "sphere", "radius": 0.4}, "coeffs": [[0, 0, 0, 0, 0, 0, 1], [0], [0]]}"#
        ))
        .is_err());
        assert!(parse(r#"{"workspace": {"min": [1, 0, 0], "max": [0, 1, 1]}}"#).is_err());
        assert!(parse(
            r#"{"workspace": {"min": [0, 0, 0], "max": [1, 1, 1]}, "vehicle_radius": -0.1}"#
        )
        .is_err());
    }

    #[test]
    fn vehicle_radius_grows_static_obstacles() {
        let scene = parse(&scene_json(
            r#"{"type": "sphere", "center": [1, 0.55, 0], "radius": 0.5}"#,
        ))
        .unwrap();
        let traj = TrajectorySpec::Endpoints {
            initial: StateSpec::default(),
            end: StateSpec {
                position: [2.0, 0.0, 0.0],
                ..Default::default()
            },
            duration: 1.0,
        }
        .build()
        .unwrap();
        // clearance 0.05 without the vehicle radius, -0.05 with it
        assert!(scene.check(&traj, &CheckConfig::default()).is_infeasible());
        assert!(scene.oracle_check(&traj, 1e-4).is_some());
    }

    #[test]
    fn trajectory_spec_round_trip() {
        let spec = TrajectorySpec::Endpoints {
            initial: StateSpec {
                position: [0.0, 1.0, 2.0],
                velocity: [1.0, 0.0, 0.0],
                acceleration: [0.0, 0.0, 0.5],
            },
            end: StateSpec {
                position: [2.0, 0.0, 1.0],
                ..Default::default()
            },
            duration: 1.3,
        };
        let traj = spec.build().unwrap();
        let text = serde_json::to_string(&TrajectorySpec::from_trajectory(&traj)).unwrap();
        let back: TrajectorySpec = serde_json::from_str(&text).unwrap();
        assert_eq!(back.build().unwrap(), traj);
    }

    #[test]
    fn workspace_containment_is_exact() {
        let ws = Workspace::new(Vec3::splat(-1.0), Vec3::splat(1.0)).unwrap();
        // overshoots past x = 1 before settling at 0.9
        let traj = QuinticTrajectory::generate(
            State::new(Vec3::zero(), Vec3::new(4.0, 0.0, 0.0), Vec3::zero()).unwrap(),
            &EndConstraint::at_rest(Vec3::new(0.9, 0.0, 0.0)),
            1.0,
        )
        .unwrap();
        assert!(traj.position_bounds().1.x > 1.0);
        assert!(!ws.contains_trajectory(&traj));
        let calm = QuinticTrajectory::generate(
            State::at_rest(Vec3::zero()),
            &EndConstraint::at_rest(Vec3::new(0.9, 0.0, 0.0)),
            1.0,
        )
        .unwrap();
        assert!(ws.contains_trajectory(&calm));
    }
}
