//! Compact Lie algebras, invariant metrics and geodesic-orbit certificates.
//!
//! The crate builds su(2), su(3) and g₂ as structure-constant tensors over
//! exact rationals, equips them with block-scalar metrics, and decides the
//! geodesic-orbit property at sampled tangent vectors by linear feasibility
//! with rank certificates. Left-invariant Ricci curvature and Einstein checks
//! are included for the Lie-group case.

pub mod cli;
pub mod error;
pub mod gocheck;
pub mod liealg;
pub mod linalg;
pub mod metrics;
pub mod ricci;
pub mod rootsys;
pub mod scalar;
pub mod spaces;

pub use error::{Error, Result};
pub use scalar::{Scalar, Q};
