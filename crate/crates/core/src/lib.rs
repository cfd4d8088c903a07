//! Holomorphic curves in `ℂP²`, their ramification data and conjugate
//! polars, and the harmonic maps `S² → ℂP²` obtained from them by the Gauss
//! transform.
//!
//! Exact computations (GCDs, ranks, divisors) run over the Gaussian
//! rationals; floating point is used only to evaluate maps and integrate
//! over the sphere.

pub mod curve;
pub mod family;
pub mod gauss;
pub mod io;
pub mod kernel;
pub mod linalg;
pub mod poly;
pub mod random;
pub mod scalar;

pub use curve::{CurveError, HoloCurve, InvariantSheet, ProjPoint, RamificationData};
pub use linalg::ExactMatrix;
pub use poly::{BezoutPair, Degree, ExactPoly, PolyError};
pub use scalar::{ApproxComplex, GaussianRational};
