//! Vectors, kinematic states and planes in the inertial frame.

use std::ops::{Add, AddAssign, Div, Index, Mul, Neg, Sub, SubAssign};

use crate::error::{Error, Result};
use crate::scalar::{lit, Real};

/// Three-component inertial-frame vector.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Real> Vec3<T> {
    #[inline]
    pub const fn new(x: T, y: T, z: T) -> Self {
        Self { x, y, z }
    }

    /// Like [`Vec3::new`] but rejects NaN and infinite components.
    pub fn try_new(x: T, y: T, z: T) -> Result<Self> {
        let v = Self::new(x, y, z);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::InvalidArgument(format!("non-finite vector {v:?}")))
        }
    }

    #[inline]
    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero(), T::zero())
    }

    #[inline]
    pub fn splat(v: T) -> Self {
        Self::new(v, v, v)
    }

    #[inline]
    pub fn from_array(a: [T; 3]) -> Self {
        Self::new(a[0], a[1], a[2])
    }

    #[inline]
    pub fn to_array(self) -> [T; 3] {
        [self.x, self.y, self.z]
    }

    #[inline]
    pub fn dot(self, rhs: Self) -> T {
        self.x * rhs.x + self.y * rhs.y + self.z * rhs.z
    }

    #[inline]
    pub fn cross(self, rhs: Self) -> Self {
        Self::new(
            self.y * rhs.z - self.z * rhs.y,
            self.z * rhs.x - self.x * rhs.z,
            self.x * rhs.y - self.y * rhs.x,
        )
    }

    #[inline]
    pub fn norm_squared(self) -> T {
        self.dot(self)
    }

    #[inline]
    pub fn norm(self) -> T {
        self.norm_squared().sqrt()
    }

    #[inline]
    pub fn map(self, f: impl Fn(T) -> T) -> Self {
        Self::new(f(self.x), f(self.y), f(self.z))
    }

    #[inline]
    pub fn zip_map(self, rhs: Self, f: impl Fn(T, T) -> T) -> Self {
        Self::new(f(self.x, rhs.x), f(self.y, rhs.y), f(self.z, rhs.z))
    }

    pub fn max_abs(self) -> T {
        self.x.abs().max(self.y.abs()).max(self.z.abs())
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

impl<T: Real> Index<usize> for Vec3<T> {
    type Output = T;

    fn index(&self, i: usize) -> &T {
        match i {
            0 => &self.x,
            1 => &self.y,
            2 => &self.z,
            _ => panic!("Vec3 index {i} out of range"),
        }
    }
}

impl<T: Real> Add for Vec3<T> {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        Self::new(self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl<T: Real> AddAssign for Vec3<T> {
    #[inline]
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl<T: Real> Sub for Vec3<T> {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl<T: Real> SubAssign for Vec3<T> {
    #[inline]
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl<T: Real> Neg for Vec3<T> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y, -self.z)
    }
}

impl<T: Real> Mul<T> for Vec3<T> {
    type Output = Self;
    #[inline]
    fn mul(self, s: T) -> Self {
        Self::new(self.x * s, self.y * s, self.z * s)
    }
}

impl<T: Real> Div<T> for Vec3<T> {
    type Output = Self;
    #[inline]
    fn div(self, s: T) -> Self {
        Self::new(self.x / s, self.y / s, self.z / s)
    }
}

/// Position, velocity and acceleration at one instant.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct State<T> {
    pub position: Vec3<T>,
    pub velocity: Vec3<T>,
    pub acceleration: Vec3<T>,
}

impl<T: Real> State<T> {
    pub fn new(position: Vec3<T>, velocity: Vec3<T>, acceleration: Vec3<T>) -> Result<Self> {
        let s = Self {
            position,
            velocity,
            acceleration,
        };
        if s.is_finite() {
            Ok(s)
        } else {
            Err(Error::InvalidArgument(format!("non-finite state {s:?}")))
        }
    }

    /// Zero velocity and acceleration at `position`.
    pub fn at_rest(position: Vec3<T>) -> Self {
        Self {
            position,
            velocity: Vec3::zero(),
            acceleration: Vec3::zero(),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.position.is_finite() && self.velocity.is_finite() && self.acceleration.is_finite()
    }
}

/// Plane through `point` with unit `normal`; the positive half-space is on the
/// normal side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Plane<T> {
    point: Vec3<T>,
    normal: Vec3<T>,
}

impl<T: Real> Plane<T> {
    /// Builds a plane, normalizing `normal`. Normals shorter than 1e-9 are
    /// rejected.
    pub fn new(point: Vec3<T>, normal: Vec3<T>) -> Result<Self> {
        let len = normal.norm();
        if !(len >= lit(1e-9)) || !point.is_finite() || !len.is_finite() {
            return Err(Error::DegeneratePlane(len.to_f64().unwrap_or(f64::NAN)));
        }
        Ok(Self {
            point,
            normal: normal / len,
        })
    }

    /// Caller guarantees `normal` is unit length.
    #[inline]
    pub(crate) fn from_unit_normal(point: Vec3<T>, normal: Vec3<T>) -> Self {
        debug_assert!((normal.norm() - T::one()).abs() <= lit(1e-9));
        Self { point, normal }
    }

    #[inline]
    pub fn point(&self) -> Vec3<T> {
        self.point
    }

    #[inline]
    pub fn normal(&self) -> Vec3<T> {
        self.normal
    }

    /// `nᵀ(q − p)`: positive on the normal side.
    #[inline]
    pub fn signed_distance(&self, q: Vec3<T>) -> T {
        self.normal.dot(q - self.point)
    }
}

/// Free-function form of [`Plane::signed_distance`].
#[inline]
pub fn plane_signed_distance<T: Real>(plane: &Plane<T>, q: Vec3<T>) -> T {
    plane.signed_distance(q)
}
