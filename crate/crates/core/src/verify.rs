//! Placeholder.
use crate::scalar::Real;
#[derive(Clone, Debug)]
pub struct Config<T> { pub _t: T }
impl<T: Real> Default for Config<T> { fn default() -> Self { Config { _t: T::zero() } } }
