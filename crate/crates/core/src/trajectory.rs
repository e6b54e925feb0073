//! Minimum-average-jerk quintic trajectories.
//!
//! Each axis of the jerk is a quadratic in time, so position is quintic:
//!
//! ```text
//! x(t) = α t⁵/120 + β t⁴/24 + γ t³/6 + ẍ(0) t²/2 + ẋ(0) t + x(0)
//! ```

use crate::error::{Error, Result};
use crate::geometry::{State, Vec3};
use crate::rootfind::{real_roots_in_interval, RealPolynomial};
use crate::scalar::{lit, Real};

/// Quintic trajectory starting at `initial` and lasting `duration` seconds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuinticTrajectory<T> {
    alpha: Vec3<T>,
    beta: Vec3<T>,
    gamma: Vec3<T>,
    initial: State<T>,
    duration: T,
}

/// Per-axis targets for the final state. `generate` needs all nine.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EndConstraint<T> {
    pub position: [Option<T>; 3],
    pub velocity: [Option<T>; 3],
    pub acceleration: [Option<T>; 3],
}

impl<T: Real> EndConstraint<T> {
    /// Checks that every axis carries at least one target.
    pub fn new(
        position: [Option<T>; 3],
        velocity: [Option<T>; 3],
        acceleration: [Option<T>; 3],
    ) -> Result<Self> {
        for axis in 0..3 {
            if position[axis].is_none() && velocity[axis].is_none() && acceleration[axis].is_none()
            {
                return Err(Error::InvalidArgument(format!(
                    "axis {axis} has no end constraint"
                )));
            }
        }
        Ok(Self {
            position,
            velocity,
            acceleration,
        })
    }

    pub fn full(end: State<T>) -> Self {
        Self {
            position: end.position.to_array().map(Some),
            velocity: end.velocity.to_array().map(Some),
            acceleration: end.acceleration.to_array().map(Some),
        }
    }

    /// Ends at `position` with zero velocity and acceleration.
    pub fn at_rest(position: Vec3<T>) -> Self {
        Self::full(State::at_rest(position))
    }

    fn as_full_state(&self) -> Option<State<T>> {
        let get = |a: [Option<T>; 3]| Some(Vec3::new(a[0]?, a[1]?, a[2]?));
        Some(State {
            position: get(self.position)?,
            velocity: get(self.velocity)?,
            acceleration: get(self.acceleration)?,
        })
    }
}

/// Bounds on mass-normalized thrust and body rate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InputBounds<T> {
    f_min: T,
    f_max: T,
    omega_max: T,
    gravity: Vec3<T>,
}

impl<T: Real> InputBounds<T> {
    pub fn new(f_min: T, f_max: T, omega_max: T, gravity: Vec3<T>) -> Result<Self> {
        if !(f_min >= T::zero() && f_min < f_max && f_max.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "thrust bounds must satisfy 0 <= f_min < f_max, got [{f_min}, {f_max}]"
            )));
        }
        if !(omega_max > T::zero() && omega_max.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "omega_max must be positive, got {omega_max}"
            )));
        }
        if !gravity.is_finite() {
            return Err(Error::InvalidArgument("gravity must be finite".into()));
        }
        Ok(Self {
            f_min,
            f_max,
            omega_max,
            gravity,
        })
    }

    /// Thrust in [5, 30] m/s², body rate up to 20 rad/s, g = (0, 0, -9.81).
    pub fn quadcopter() -> Self {
        Self::new(
            lit(5.0),
            lit(30.0),
            lit(20.0),
            Vec3::new(T::zero(), T::zero(), lit(-9.81)),
        )
        .unwrap()
    }

    pub fn f_min(&self) -> T {
        self.f_min
    }

    pub fn f_max(&self) -> T {
        self.f_max
    }

    pub fn omega_max(&self) -> T {
        self.omega_max
    }

    pub fn gravity(&self) -> Vec3<T> {
        self.gravity
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputFeasibility {
    Feasible,
    Infeasible,
}

/// Sample spacing of the input-feasibility grid, in seconds.
const FEASIBILITY_SPACING: f64 = 0.01;
const FEASIBILITY_MIN_SAMPLES: usize = 32;
/// Bounds are tightened by this fraction before sampling.
const FEASIBILITY_MARGIN: f64 = 0.02;

impl<T: Real> QuinticTrajectory<T> {
    pub fn new(
        alpha: Vec3<T>,
        beta: Vec3<T>,
        gamma: Vec3<T>,
        initial: State<T>,
        duration: T,
    ) -> Result<Self> {
        if !(duration > T::zero() && duration.is_finite()) {
            return Err(Error::InvalidDuration(
                duration.to_f64().unwrap_or(f64::NAN),
            ));
        }
        if !(alpha.is_finite() && beta.is_finite() && gamma.is_finite() && initial.is_finite()) {
            return Err(Error::InvalidArgument(
                "non-finite trajectory coefficients".into(),
            ));
        }
        Ok(Self {
            alpha,
            beta,
            gamma,
            initial,
            duration,
        })
    }

    /// Solves for the minimum-average-jerk quintic joining `initial` to the
    /// fully constrained `end` in `duration` seconds.
    pub fn generate(initial: State<T>, end: &EndConstraint<T>, duration: T) -> Result<Self> {
        if !(duration > T::zero() && duration.is_finite()) {
            return Err(Error::InvalidDuration(
                duration.to_f64().unwrap_or(f64::NAN),
            ));
        }
        let end = end.as_full_state().ok_or_else(|| {
            Error::InvalidArgument(
                "generate requires position, velocity and acceleration on every axis".into(),
            )
        })?;
        let t = duration;
        let t2 = t * t;
        let t3 = t2 * t;
        let t4 = t2 * t2;
        let t5 = t4 * t;
        let a0 = initial.acceleration;
        let v0 = initial.velocity;
        let p0 = initial.position;
        let dp = end.position - (p0 + v0 * t + a0 * (t2 / lit(2.0)));
        let dv = end.velocity - (v0 + a0 * t);
        let da = end.acceleration - a0;

        let alpha =
            (dp * (lit::<T>(720.0)) - dv * (lit::<T>(360.0) * t) + da * (lit::<T>(60.0) * t2)) / t5;
        let beta = (dp * (lit::<T>(-360.0) * t) + dv * (lit::<T>(168.0) * t2)
            - da * (lit::<T>(24.0) * t3))
            / t5;
        let gamma = (dp * (lit::<T>(60.0) * t2) - dv * (lit::<T>(24.0) * t3)
            + da * (lit::<T>(3.0) * t4))
            / t5;
        Self::new(alpha, beta, gamma, initial, duration)
    }

    /// Trajectory that stays at rest at `position`.
    pub fn stationary(position: Vec3<T>, duration: T) -> Result<Self> {
        let zero = Vec3::zero();
        Self::new(zero, zero, zero, State::at_rest(position), duration)
    }

    pub fn alpha(&self) -> Vec3<T> {
        self.alpha
    }

    pub fn beta(&self) -> Vec3<T> {
        self.beta
    }

    pub fn gamma(&self) -> Vec3<T> {
        self.gamma
    }

    pub fn initial(&self) -> State<T> {
        self.initial
    }

    pub fn duration(&self) -> T {
        self.duration
    }

    #[inline]
    pub fn position(&self, t: T) -> Vec3<T> {
        let s = self.initial;
        ((((self.alpha * lit(1.0 / 120.0) * t + self.beta * lit(1.0 / 24.0)) * t
            + self.gamma * lit(1.0 / 6.0))
            * t
            + s.acceleration * lit(0.5))
            * t
            + s.velocity)
            * t
            + s.position
    }

    #[inline]
    pub fn velocity(&self, t: T) -> Vec3<T> {
        let s = self.initial;
        (((self.alpha * lit(1.0 / 24.0) * t + self.beta * lit(1.0 / 6.0)) * t
            + self.gamma * lit(0.5))
            * t
            + s.acceleration)
            * t
            + s.velocity
    }

    #[inline]
    pub fn acceleration(&self, t: T) -> Vec3<T> {
        ((self.alpha * lit(1.0 / 6.0) * t + self.beta * lit(0.5)) * t + self.gamma) * t
            + self.initial.acceleration
    }

    #[inline]
    pub fn jerk(&self, t: T) -> Vec3<T> {
        (self.alpha * lit(0.5) * t + self.beta) * t + self.gamma
    }

    pub fn state(&self, t: T) -> State<T> {
        State {
            position: self.position(t),
            velocity: self.velocity(t),
            acceleration: self.acceleration(t),
        }
    }

    pub fn final_state(&self) -> State<T> {
        self.state(self.duration)
    }

    /// Same motion shifted by `offset`.
    pub fn translated(&self, offset: Vec3<T>) -> Self {
        let mut out = *self;
        out.initial.position += offset;
        out
    }

    /// `(1/T) ∫₀ᵀ ‖jerk‖² dt`, exact.
    pub fn average_jerk_squared(&self) -> T {
        let t = self.duration;
        let t2 = t * t;
        let a = self.alpha;
        let b = self.beta;
        let g = self.gamma;
        g.dot(g)
            + b.dot(g) * t
            + (b.dot(b) + a.dot(g)) * t2 / lit(3.0)
            + a.dot(b) * t2 * t / lit(4.0)
            + a.dot(a) * t2 * t2 / lit(20.0)
    }

    /// Coefficients of `nᵀẋ(t)`, the rate of change of the signed distance
    /// to any plane with normal `n`.
    #[inline]
    pub fn distance_rate(&self, n: Vec3<T>) -> RealPolynomial<T> {
        RealPolynomial::from_coeffs_unchecked([
            n.dot(self.initial.velocity),
            n.dot(self.initial.acceleration),
            n.dot(self.gamma) * lit(0.5),
            n.dot(self.beta) * lit(1.0 / 6.0),
            n.dot(self.alpha) * lit(1.0 / 24.0),
        ])
    }

    /// Exact axis-aligned bounds of the position over `[0, T]`.
    pub fn position_bounds(&self) -> (Vec3<T>, Vec3<T>) {
        let start = self.initial.position;
        let end = self.position(self.duration);
        let mut lo = start.zip_map(end, T::min);
        let mut hi = start.zip_map(end, T::max);
        for axis in 0..3 {
            let mut n = [T::zero(); 3];
            n[axis] = T::one();
            let rate = self.distance_rate(Vec3::from_array(n));
            let Ok(roots) = real_roots_in_interval(&rate, T::zero(), self.duration) else {
                continue;
            };
            for t in roots {
                let p = self.position(t)[axis];
                match axis {
                    0 => {
                        lo.x = lo.x.min(p);
                        hi.x = hi.x.max(p);
                    }
                    1 => {
                        lo.y = lo.y.min(p);
                        hi.y = hi.y.max(p);
                    }
                    _ => {
                        lo.z = lo.z.min(p);
                        hi.z = hi.z.max(p);
                    }
                }
            }
        }
        (lo, hi)
    }

    /// Conservative thrust and body-rate screen.
    ///
    /// Samples `f = ‖ẍ − g‖` and the body-rate bound `‖jerk‖ / f` on a
    /// uniform grid of `max(32, ⌈T / 0.01⌉)` intervals (endpoints included)
    /// against bounds tightened by 2%.
    pub fn check_input_feasibility(&self, bounds: &InputBounds<T>) -> InputFeasibility {
        let margin = lit::<T>(FEASIBILITY_MARGIN);
        let f_lo = bounds.f_min * (T::one() + margin);
        let f_hi = bounds.f_max * (T::one() - margin);
        let w_hi = bounds.omega_max * (T::one() - margin);
        let (f_lo2, f_hi2, w_hi2) = (f_lo * f_lo, f_hi * f_hi, w_hi * w_hi);

        let intervals = (self.duration / lit(FEASIBILITY_SPACING))
            .ceil()
            .to_usize()
            .unwrap_or(usize::MAX)
            .max(FEASIBILITY_MIN_SAMPLES);
        let dt = self.duration / lit(intervals as f64);
        for k in 0..=intervals {
            let t = if k == intervals {
                self.duration
            } else {
                dt * lit(k as f64)
            };
            let thrust = self.acceleration(t) - bounds.gravity;
            let f2 = thrust.norm_squared();
            if f2 < f_lo2 || f2 > f_hi2 || f2 == T::zero() {
                return InputFeasibility::Infeasible;
            }
            if self.jerk(t).norm_squared() > w_hi2 * f2 {
                return InputFeasibility::Infeasible;
            }
        }
        InputFeasibility::Feasible
    }
}

/// Free-function form of [`QuinticTrajectory::generate`].
pub fn generate<T: Real>(
    initial: State<T>,
    end: &EndConstraint<T>,
    duration: T,
) -> Result<QuinticTrajectory<T>> {
    QuinticTrajectory::generate(initial, end, duration)
}
