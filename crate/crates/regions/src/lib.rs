//! Rate regions of two-receiver broadcast channels whose receivers
//! cooperate over a rate-limited link, with and without a secrecy
//! constraint on the first message.
//!
//! The crate evaluates labeled rate ceilings at single auxiliary choices
//! ([`eval`]), approximates whole regions by sampling and refining
//! auxiliaries ([`union`]), and carries closed forms for three worked
//! channel geometries: the blackboard channel ([`bbc`]), the scalar
//! Gaussian channel ([`gaussian`]), and binary dirty-paper coding
//! ([`bdp`]).

pub mod auxdist;
pub mod bbc;
pub mod bdp;
pub mod bounds;
pub mod channel;
pub mod error;
pub mod eval;
pub mod gaussian;
pub mod union;

pub use auxdist::AuxPmf;
pub use bounds::RateBounds;
pub use channel::{BcChannel, Structure, StructureKind};
pub use error::{RegionError, Result};
pub use eval::{
    dbc_region_eval, inner_bound_eval, nosec_region_eval, pd_region_eval, sd_region_eval,
};
pub use union::{
    polyline_hausdorff, region_union_approx, Family, RegionApprox, SamplerParams,
};
