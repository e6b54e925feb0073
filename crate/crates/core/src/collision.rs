//! Recursive separating-plane collision detection for quintic trajectories.
//!
//! A section `[t_s, t_f]` is split at its midpoint. If the midpoint is
//! outside the obstacle, the plane separating it from the obstacle is built
//! and the critical points of the trajectory's signed distance to that plane
//! are found in closed form (the distance rate is a quartic). Between
//! consecutive critical points the distance is monotone, so if it is
//! positive at every critical point the trajectory never reaches the
//! obstacle. Otherwise the offending sub-section is checked recursively.

use crate::error::{Error, Result};
use crate::geometry::Plane;
use crate::obstacles::{enlarge, relative_trajectory, ConvexRegion, MovingObstacle};
use crate::rootfind::{real_roots_in_interval, Roots};
use crate::scalar::{lit, Real};
use crate::trajectory::QuinticTrajectory;

/// Critical points closer than this (seconds) to a section boundary or to the
/// split time are dropped.
const CRITICAL_POINT_DEDUP: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Verdict<T> {
    /// No point of the trajectory lies inside the obstacle.
    Feasible,
    /// `witness` is a time at which the trajectory is inside the obstacle.
    Infeasible { witness: T },
    /// A section shorter than `t_min` could not be certified.
    Indeterminable,
}

impl<T> Verdict<T> {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Verdict::Feasible)
    }

    pub fn is_infeasible(&self) -> bool {
        matches!(self, Verdict::Infeasible { .. })
    }

    pub fn is_indeterminable(&self) -> bool {
        matches!(self, Verdict::Indeterminable)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckConfig<T> {
    t_min: T,
    max_recursion_depth: usize,
}

impl<T: Real> CheckConfig<T> {
    pub fn new(t_min: T, max_recursion_depth: usize) -> Result<Self> {
        if !(t_min > T::zero() && t_min.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "t_min must be positive, got {t_min}"
            )));
        }
        Ok(Self {
            t_min,
            max_recursion_depth,
        })
    }

    /// `t_min` with the default recursion backstop of 64.
    pub fn with_t_min(t_min: T) -> Result<Self> {
        Self::new(t_min, 64)
    }

    pub fn t_min(&self) -> T {
        self.t_min
    }

    pub fn max_recursion_depth(&self) -> usize {
        self.max_recursion_depth
    }
}

impl<T: Real> Default for CheckConfig<T> {
    /// 2 ms minimum section, depth backstop 64.
    fn default() -> Self {
        Self {
            t_min: lit(0.002),
            max_recursion_depth: 64,
        }
    }
}

/// Instrumentation of a single top-level check.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CheckStats {
    /// Number of section checks performed.
    pub sections: usize,
    /// Deepest recursion level reached (the top-level section is depth 0).
    pub max_depth: usize,
}

struct SectionChecker<'a, T, O: ?Sized> {
    traj: &'a QuinticTrajectory<T>,
    obstacle: &'a O,
    cfg: &'a CheckConfig<T>,
    stats: CheckStats,
}

impl<T: Real, O: ConvexRegion<T> + ?Sized> SectionChecker<'_, T, O> {
    fn check_section(&mut self, ts: T, tf: T, depth: usize) -> Verdict<T> {
        self.stats.sections += 1;
        self.stats.max_depth = self.stats.max_depth.max(depth);
        if depth > self.cfg.max_recursion_depth {
            return Verdict::Indeterminable;
        }

        let t_split = (ts + tf) * lit(0.5);
        let x_split = self.traj.position(t_split);
        if self.obstacle.contains(x_split) {
            return Verdict::Infeasible { witness: t_split };
        }
        if tf - ts < self.cfg.t_min {
            return Verdict::Indeterminable;
        }
        let plane = match self.obstacle.separating_plane(x_split) {
            Ok(plane) => plane,
            Err(_) => return Verdict::Indeterminable,
        };
        // An identically zero rate means d(t) is constant (and positive).
        let critical = real_roots_in_interval(&self.traj.distance_rate(plane.normal()), ts, tf)
            .unwrap_or_else(|_| Roots::new());
        let eps = lit::<T>(CRITICAL_POINT_DEDUP);

        // Forward from the split towards t_f.
        let mut prev = t_split;
        let ascending = critical
            .iter()
            .copied()
            .filter(|&t| t > t_split + eps && t < tf - eps)
            .chain(std::iter::once(tf));
        for t in ascending {
            if self.on_obstacle_side(&plane, t) {
                match self.check_section(prev, tf, depth + 1) {
                    Verdict::Feasible => break,
                    other => return other,
                }
            }
            prev = t;
        }

        // Backward from the split towards t_s.
        let mut prev = t_split;
        let descending = critical
            .iter()
            .rev()
            .copied()
            .filter(|&t| t < t_split - eps && t > ts + eps)
            .chain(std::iter::once(ts));
        for t in descending {
            if self.on_obstacle_side(&plane, t) {
                return self.check_section(ts, prev, depth + 1);
            }
            prev = t;
        }

        Verdict::Feasible
    }

    #[inline]
    fn on_obstacle_side(&self, plane: &Plane<T>, t: T) -> bool {
        plane.signed_distance(self.traj.position(t)) <= T::zero()
    }
}

/// Checks `traj` against a single convex obstacle, treating the vehicle as a
/// point (enlarge the obstacle first to account for vehicle size).
pub fn collision_check<T: Real, O: ConvexRegion<T> + ?Sized>(
    traj: &QuinticTrajectory<T>,
    obstacle: &O,
    cfg: &CheckConfig<T>,
) -> Verdict<T> {
    collision_check_with_stats(traj, obstacle, cfg).0
}

/// [`collision_check`] plus recursion statistics.
pub fn collision_check_with_stats<T: Real, O: ConvexRegion<T> + ?Sized>(
    traj: &QuinticTrajectory<T>,
    obstacle: &O,
    cfg: &CheckConfig<T>,
) -> (Verdict<T>, CheckStats) {
    let duration = traj.duration();
    if obstacle.contains(traj.initial().position) {
        return (
            Verdict::Infeasible { witness: T::zero() },
            CheckStats::default(),
        );
    }
    if obstacle.contains(traj.position(duration)) {
        return (
            Verdict::Infeasible { witness: duration },
            CheckStats::default(),
        );
    }
    let mut checker = SectionChecker {
        traj,
        obstacle,
        cfg,
        stats: CheckStats::default(),
    };
    let verdict = checker.check_section(T::zero(), duration, 0);
    (verdict, checker.stats)
}

/// Checks `traj` against a translating obstacle by checking the relative
/// trajectory against the obstacle shape, grown by `r_q`, at the origin.
pub fn collision_check_dynamic<T: Real>(
    traj: &QuinticTrajectory<T>,
    moving: &MovingObstacle<T>,
    r_q: T,
    cfg: &CheckConfig<T>,
) -> Result<Verdict<T>> {
    let shape = enlarge(moving.shape(), r_q)?;
    let relative = relative_trajectory(traj, moving);
    Ok(collision_check(&relative, &shape, cfg))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OracleVerdict<T> {
    Clear,
    /// First sample time found inside the obstacle.
    Hit(T),
}

impl<T> OracleVerdict<T> {
    pub fn is_clear(&self) -> bool {
        matches!(self, OracleVerdict::Clear)
    }
}

/// Brute-force reference: samples `t = 0, dt, 2dt, …` and finally `T`.
/// Can miss crossings shorter than `dt`.
pub fn oracle_collision_check<T: Real, O: ConvexRegion<T> + ?Sized>(
    traj: &QuinticTrajectory<T>,
    obstacle: &O,
    dt: T,
) -> Result<OracleVerdict<T>> {
    if !(dt > T::zero() && dt.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "oracle step must be positive, got {dt}"
        )));
    }
    let duration = traj.duration();
    let steps = (duration / dt).floor().to_usize().unwrap_or(usize::MAX);
    for k in 0..=steps {
        let t = dt * lit(k as f64);
        if t > duration {
            break;
        }
        if obstacle.contains(traj.position(t)) {
            return Ok(OracleVerdict::Hit(t));
        }
    }
    if obstacle.contains(traj.position(duration)) {
        return Ok(OracleVerdict::Hit(duration));
    }
    Ok(OracleVerdict::Clear)
}
