//! Exact rational half-space systems.
//!
//! An [`IneqSystem`] is a conjunction of closed linear inequalities over
//! named variables, with every coefficient a [`BigRational`].  On top of it
//! the crate offers Fourier-Motzkin elimination ([`IneqSystem::eliminate`]),
//! projection onto a subset of variables ([`IneqSystem::project`]),
//! feasibility, implication-based redundancy pruning
//! ([`IneqSystem::remove_redundant`]), and vertex enumeration
//! ([`IneqSystem::vertices`]) — all in exact arithmetic, so two systems that
//! describe the same point set can be compared by their vertex sets without
//! any tolerance.
//!
//! Floating-point data enters through [`rationalize`], which snaps a float to
//! the smallest-denominator rational within a given tolerance; from there on
//! everything is exact.

pub mod error;
pub mod ineq;
pub mod rational;
pub mod system;

pub use error::{PolyError, Result};
pub use ineq::LinIneq;
pub use num_rational::BigRational;
pub use rational::{exact_from_f64, format_rational, parse_rational, rationalize};
pub use system::{IneqSystem, BASIS_BUDGET, ROW_BUDGET, VERTEX_DIM_CAP};
