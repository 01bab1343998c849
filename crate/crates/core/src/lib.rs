//! Quaternionic slice regular functions with numerical
//! Phragmén–Lindelöf verification.
//!
//! The crate provides, in dependency order:
//!
//! - [`quaternion`]: exact-semantics quaternion algebra, polar
//!   decomposition, and the slice-preserving elementary functions
//!   (exponential, two logarithm branches, real powers);
//! - [`expr`]: a composable tree of slice regular functions with
//!   pointwise evaluation, Splitting-Lemma decomposition, finite
//!   difference Cauchy–Riemann residuals, and slice-preserving checks;
//! - [`domain`]: the domain families the bounds live on (balls,
//!   circular cones, angular domains, strip domains) with membership,
//!   boundary sampling, opening/width estimation and slice-domain
//!   diagnostics;
//! - [`growth`]: radial maximum modulus sweeps and growth order/type
//!   estimation;
//! - [`verify`]: executable checks for the Phragmén–Lindelöf theorems
//!   (bounded, cone, sharp envelope, strip, Liouville) producing
//!   witness-carrying reports;
//! - [`parse`]: the JSON descriptions of functions and domains used by
//!   the CLI and other front ends.
//!
//! All numerics are generic over the scalar through [`scalar::Real`];
//! the concrete aliases below fix `f64`, which is what the CLI uses.

pub mod domain;
pub mod error;
pub mod expr;
pub mod growth;
pub mod parse;
pub mod quaternion;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::Real;

/// `f64` quaternion, the working type of the CLI.
pub type Quat64 = quaternion::Quaternion<f64>;
/// `f32` quaternion.
pub type Quat32 = quaternion::Quaternion<f32>;
/// `f64` unit imaginary axis.
pub type Axis64 = quaternion::UnitImaginary<f64>;
/// `f64` function expression tree.
pub type Expr64 = expr::FunctionExpr<f64>;
/// `f64` domain.
pub type Domain64 = domain::Domain<f64>;
/// `f64` verifier configuration.
pub type Config64 = verify::Config<f64>;
