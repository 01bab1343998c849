//! Scalar abstraction: the whole library is generic over the floating
//! point type through this trait.

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating point scalar (f32 or f64) with the constants and conversions
/// the numerics need.
pub trait Real:
    Float + FloatConst + FromPrimitive + core::fmt::Debug + core::fmt::Display + Send + Sync + 'static
{
}

impl Real for f32 {}
impl Real for f64 {}

/// Convert an `f64` literal into the working scalar type.
///
/// Panics only if the target type cannot represent any f64 at all, which
/// does not happen for f32/f64.
#[inline]
pub fn real<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("f64 constant not representable in scalar type")
}
