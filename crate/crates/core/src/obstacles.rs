//! Convex obstacles: spheres, oriented boxes, and translating (non-rotating)
//! obstacles whose center follows a polynomial of degree at most five.

use crate::error::{Error, Result};
use crate::geometry::{Plane, Vec3};
use crate::scalar::{lit, Real};
use crate::trajectory::QuinticTrajectory;

/// Exterior points closer than this to the boundary have no usable normal.
pub const DEGENERATE_NORMAL_DISTANCE: f64 = 1e-12;
const ORTHONORMAL_TOL: f64 = 1e-9;

/// A closed convex region that can answer the two queries the collision
/// checker needs: point membership and a separating plane for an exterior
/// point.
pub trait ConvexRegion<T: Real> {
    /// Closed-set membership: boundary points are inside.
    fn contains(&self, q: Vec3<T>) -> bool;

    /// Point of the region nearest to `q`. Only meaningful for exterior `q`.
    fn closest_point(&self, q: Vec3<T>) -> Vec3<T>;

    fn center(&self) -> Vec3<T>;

    /// Plane through the closest point of the region to `q`, with normal
    /// pointing from that point towards `q`. The region lies in the closed
    /// negative half-space, `q` strictly in the positive one.
    fn separating_plane(&self, q: Vec3<T>) -> Result<Plane<T>> {
        if self.contains(q) {
            return Err(Error::PointInside);
        }
        let p = self.closest_point(q);
        let gap = q - p;
        let dist = gap.norm();
        if !(dist > lit(DEGENERATE_NORMAL_DISTANCE)) {
            return Err(Error::DegenerateNormal(dist.to_f64().unwrap_or(f64::NAN)));
        }
        Ok(Plane::from_unit_normal(p, gap / dist))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sphere<T> {
    center: Vec3<T>,
    radius: T,
}

impl<T: Real> Sphere<T> {
    pub fn new(center: Vec3<T>, radius: T) -> Result<Self> {
        if !(radius > T::zero() && radius.is_finite()) || !center.is_finite() {
            return Err(Error::InvalidObstacle(format!(
                "sphere radius must be positive, got {radius}"
            )));
        }
        Ok(Self { center, radius })
    }

    pub fn radius(&self) -> T {
        self.radius
    }
}

impl<T: Real> ConvexRegion<T> for Sphere<T> {
    #[inline]
    fn contains(&self, q: Vec3<T>) -> bool {
        (q - self.center).norm_squared() <= self.radius * self.radius
    }

    #[inline]
    fn closest_point(&self, q: Vec3<T>) -> Vec3<T> {
        let d = q - self.center;
        let len = d.norm();
        if len == T::zero() {
            return self.center;
        }
        self.center + d * (self.radius / len)
    }

    fn center(&self) -> Vec3<T> {
        self.center
    }
}

/// Box with arbitrary orientation. `axes` are the body axes expressed in the
/// inertial frame (the rows of the body-to-inertial rotation's transpose).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrientedBox<T> {
    center: Vec3<T>,
    half_extents: Vec3<T>,
    axes: [Vec3<T>; 3],
}

impl<T: Real> OrientedBox<T> {
    pub fn new(center: Vec3<T>, half_extents: Vec3<T>, axes: [Vec3<T>; 3]) -> Result<Self> {
        if !(half_extents.x > T::zero() && half_extents.y > T::zero() && half_extents.z > T::zero())
            || !half_extents.is_finite()
            || !center.is_finite()
        {
            return Err(Error::InvalidObstacle(format!(
                "box half extents must be positive, got {half_extents:?}"
            )));
        }
        let tol = lit::<T>(ORTHONORMAL_TOL);
        for i in 0..3 {
            for j in 0..3 {
                let expected = if i == j { T::one() } else { T::zero() };
                if !((axes[i].dot(axes[j]) - expected).abs() <= tol) {
                    return Err(Error::InvalidObstacle(format!(
                        "box orientation is not orthonormal: {axes:?}"
                    )));
                }
            }
        }
        Ok(Self {
            center,
            half_extents,
            axes,
        })
    }

    pub fn axis_aligned(center: Vec3<T>, half_extents: Vec3<T>) -> Result<Self> {
        let (o, l) = (T::zero(), T::one());
        Self::new(
            center,
            half_extents,
            [Vec3::new(l, o, o), Vec3::new(o, l, o), Vec3::new(o, o, l)],
        )
    }

    /// Box rotated by `angle` radians about `axis` (Rodrigues' formula).
    pub fn from_axis_angle(
        center: Vec3<T>,
        half_extents: Vec3<T>,
        axis: Vec3<T>,
        angle: T,
    ) -> Result<Self> {
        let len = axis.norm();
        if !(len > lit(1e-9)) {
            return Err(Error::InvalidObstacle(
                "rotation axis has zero length".into(),
            ));
        }
        let k = axis / len;
        let (s, c) = angle.sin_cos();
        let rotate = |v: Vec3<T>| v * c + k.cross(v) * s + k * (k.dot(v) * (T::one() - c));
        let (o, l) = (T::zero(), T::one());
        let axes = [
            rotate(Vec3::new(l, o, o)),
            rotate(Vec3::new(o, l, o)),
            rotate(Vec3::new(o, o, l)),
        ];
        Self::new(center, half_extents, axes)
    }

    pub fn half_extents(&self) -> Vec3<T> {
        self.half_extents
    }

    pub fn axes(&self) -> [Vec3<T>; 3] {
        self.axes
    }

    #[inline]
    fn local_coords(&self, q: Vec3<T>) -> Vec3<T> {
        let d = q - self.center;
        Vec3::new(
            self.axes[0].dot(d),
            self.axes[1].dot(d),
            self.axes[2].dot(d),
        )
    }

    pub fn vertices(&self) -> [Vec3<T>; 8] {
        let mut out = [self.center; 8];
        for (i, v) in out.iter_mut().enumerate() {
            for k in 0..3 {
                let sign = if i >> k & 1 == 1 { T::one() } else { -T::one() };
                *v += self.axes[k] * (sign * self.half_extents[k]);
            }
        }
        out
    }
}

impl<T: Real> ConvexRegion<T> for OrientedBox<T> {
    #[inline]
    fn contains(&self, q: Vec3<T>) -> bool {
        let l = self.local_coords(q);
        let h = self.half_extents;
        l.x.abs() <= h.x && l.y.abs() <= h.y && l.z.abs() <= h.z
    }

    #[inline]
    fn closest_point(&self, q: Vec3<T>) -> Vec3<T> {
        let l = self.local_coords(q);
        let h = self.half_extents;
        let c = Vec3::new(
            l.x.max(-h.x).min(h.x),
            l.y.max(-h.y).min(h.y),
            l.z.max(-h.z).min(h.z),
        );
        self.center + self.axes[0] * c.x + self.axes[1] * c.y + self.axes[2] * c.z
    }

    fn center(&self) -> Vec3<T> {
        self.center
    }
}

/// Any supported static obstacle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Obstacle<T> {
    Sphere(Sphere<T>),
    Box(OrientedBox<T>),
}

impl<T: Real> From<Sphere<T>> for Obstacle<T> {
    fn from(s: Sphere<T>) -> Self {
        Obstacle::Sphere(s)
    }
}

impl<T: Real> From<OrientedBox<T>> for Obstacle<T> {
    fn from(b: OrientedBox<T>) -> Self {
        Obstacle::Box(b)
    }
}

impl<T: Real> ConvexRegion<T> for Obstacle<T> {
    #[inline]
    fn contains(&self, q: Vec3<T>) -> bool {
        match self {
            Obstacle::Sphere(s) => s.contains(q),
            Obstacle::Box(b) => b.contains(q),
        }
    }

    #[inline]
    fn closest_point(&self, q: Vec3<T>) -> Vec3<T> {
        match self {
            Obstacle::Sphere(s) => s.closest_point(q),
            Obstacle::Box(b) => b.closest_point(q),
        }
    }

    fn center(&self) -> Vec3<T> {
        match self {
            Obstacle::Sphere(s) => s.center,
            Obstacle::Box(b) => b.center,
        }
    }
}

impl<T: Real> Obstacle<T> {
    /// Grows the obstacle by `r_q` in every direction. Boxes grow each half
    /// extent, which over-approximates the rounded Minkowski sum at edges and
    /// corners.
    pub fn enlarge(&self, r_q: T) -> Result<Self> {
        if !(r_q >= T::zero() && r_q.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "enlargement radius must be >= 0, got {r_q}"
            )));
        }
        Ok(match *self {
            Obstacle::Sphere(s) => Obstacle::Sphere(Sphere {
                radius: s.radius + r_q,
                ..s
            }),
            Obstacle::Box(b) => Obstacle::Box(OrientedBox {
                half_extents: b.half_extents + Vec3::splat(r_q),
                ..b
            }),
        })
    }

    pub fn translated(&self, offset: Vec3<T>) -> Self {
        match *self {
            Obstacle::Sphere(s) => Obstacle::Sphere(Sphere {
                center: s.center + offset,
                ..s
            }),
            Obstacle::Box(b) => Obstacle::Box(OrientedBox {
                center: b.center + offset,
                ..b
            }),
        }
    }
}

/// Free-function form of [`Obstacle::enlarge`].
pub fn enlarge<T: Real>(obstacle: &Obstacle<T>, r_q: T) -> Result<Obstacle<T>> {
    obstacle.enlarge(r_q)
}

/// Obstacle translating along `x_O(t) = Σ cₖ tᵏ` (per axis, k ≤ 5) without
/// rotating. `shape` is expressed relative to the moving center, so it must
/// be centered at the origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MovingObstacle<T> {
    shape: Obstacle<T>,
    coeffs: [[T; 6]; 3],
}

impl<T: Real> MovingObstacle<T> {
    /// `coeffs[axis][k]` multiplies `tᵏ`.
    pub fn new(shape: Obstacle<T>, coeffs: [[T; 6]; 3]) -> Result<Self> {
        if shape.center() != Vec3::zero() {
            return Err(Error::InvalidObstacle(
                "moving obstacle shape must be centered at the origin".into(),
            ));
        }
        if coeffs.iter().flatten().any(|c| !c.is_finite()) {
            return Err(Error::InvalidObstacle(
                "non-finite center trajectory".into(),
            ));
        }
        Ok(Self { shape, coeffs })
    }

    /// Accepts per-axis coefficient lists of any length up to six.
    pub fn from_slices(shape: Obstacle<T>, coeffs: [&[T]; 3]) -> Result<Self> {
        let mut out = [[T::zero(); 6]; 3];
        for (axis, c) in coeffs.iter().enumerate() {
            if c.len() > 6 {
                return Err(Error::InvalidObstacle(format!(
                    "center trajectory degree {} exceeds 5 on axis {axis}",
                    c.len() - 1
                )));
            }
            out[axis][..c.len()].copy_from_slice(c);
        }
        Self::new(shape, out)
    }

    /// Ballistic center `p0 + v0 t + ½ g t²`.
    pub fn ballistic(
        shape: Obstacle<T>,
        p0: Vec3<T>,
        v0: Vec3<T>,
        gravity: Vec3<T>,
    ) -> Result<Self> {
        let mut coeffs = [[T::zero(); 6]; 3];
        for axis in 0..3 {
            coeffs[axis][0] = p0[axis];
            coeffs[axis][1] = v0[axis];
            coeffs[axis][2] = gravity[axis] * lit(0.5);
        }
        Self::new(shape, coeffs)
    }

    pub fn shape(&self) -> &Obstacle<T> {
        &self.shape
    }

    pub fn coeffs(&self) -> &[[T; 6]; 3] {
        &self.coeffs
    }

    pub fn center_at(&self, t: T) -> Vec3<T> {
        let eval = |c: &[T; 6]| c.iter().rev().fold(T::zero(), |acc, &ck| acc * t + ck);
        Vec3::new(
            eval(&self.coeffs[0]),
            eval(&self.coeffs[1]),
            eval(&self.coeffs[2]),
        )
    }

    /// The same motion with time measured from `t0`: `x_O(t0 + τ)` as a
    /// polynomial in `τ`.
    pub fn time_shifted(&self, t0: T) -> Self {
        let mut out = self.coeffs;
        for c in &mut out {
            // Taylor shift by repeated synthetic division.
            for i in 0..6 {
                for j in (i..5).rev() {
                    c[j] = c[j] + t0 * c[j + 1];
                }
            }
        }
        Self {
            shape: self.shape,
            coeffs: out,
        }
    }
}

/// `x̃(t) = x(t) − x_O(t)`, again a quintic.
pub fn relative_trajectory<T: Real>(
    traj: &QuinticTrajectory<T>,
    moving: &MovingObstacle<T>,
) -> QuinticTrajectory<T> {
    let c = moving.coeffs();
    let k = |i: usize| Vec3::new(c[0][i], c[1][i], c[2][i]);
    let mut initial = traj.initial();
    initial.position -= k(0);
    initial.velocity -= k(1);
    initial.acceleration -= k(2) * lit(2.0);
    QuinticTrajectory::new(
        traj.alpha() - k(5) * lit(120.0),
        traj.beta() - k(4) * lit(24.0),
        traj.gamma() - k(3) * lit(6.0),
        initial,
        traj.duration(),
    )
    .expect("difference of finite coefficients over a valid duration")
}
