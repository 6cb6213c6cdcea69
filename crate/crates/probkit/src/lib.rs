//! Finite-alphabet probability core: PMF algebra over named axes,
//! information measures in bits, distribution distances, binary-entropy
//! utilities, concave envelopes, and letter typicality.
//!
//! Everything is dense, exact up to f64, and validated on construction; all
//! types are immutable afterwards and safe to share across threads.

pub mod binary;
pub mod envelope;
pub mod error;
pub mod info;
pub mod pmf;
pub mod typical;

pub use error::{ProbError, Result};
pub use info::{cond_entropy, entropy, joint_entropy, kl_divergence, mutual_info, tv_distance};
pub use pmf::{axis, compose, Axis, CondPmf, JointPmf, Pmf, CELL_BUDGET, MASS_TOL};
pub use typical::{is_letter_typical, TypicalityParams};
