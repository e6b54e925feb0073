//! Scalar abstraction shared by every module.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating point scalar the library is generic over.
///
/// `f64` is the supported precision: the root solver thresholds and the
/// collision tolerances are tuned for double precision. `f32` satisfies the
/// bound and compiles, but the resolvent cubic loses too many digits for the
/// collision checker to be trusted.
pub trait Real:
    Float + FloatConst + FromPrimitive + Debug + Display + Default + Send + Sync + 'static
{
}

impl<T> Real for T where
    T: Float + FloatConst + FromPrimitive + Debug + Display + Default + Send + Sync + 'static
{
}

/// Converts an `f64` literal into `T`.
#[inline(always)]
pub fn lit<T: Real>(x: f64) -> T {
    // from_f64 cannot fail for f32/f64; it only rounds.
    T::from_f64(x).unwrap()
}
