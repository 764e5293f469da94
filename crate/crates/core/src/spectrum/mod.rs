//! Local configurations, bounded-depth filter certificates and the basic
//! cylinder sets `Z(I ∖ F)`.
//!
//! Filters are infinite objects. Everything here works with finite
//! truncations and reports the depth up to which a statement was checked.

mod config;
mod cylinder;
mod truncation;

use thiserror::Error;

use crate::budget::BudgetExceeded;

pub use config::{configurations_at, is_admissible, is_finite_maximal_config, is_maximal_config, LocalConfig};
pub use cylinder::{cylinder_difference, cylinder_intersect, cylinder_member, enumerate_n, is_in_n, n_decompose, CylinderSet};
pub use truncation::{
    check_tight_truncation, check_ultra_truncation, local_config_at, phi_trim, psi_extend, random_truncation,
    unverified_members, Certificate, FilterKind, FilterTruncation,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpectrumError {
    #[error("paths start at different vertices")]
    MixedSources,
    #[error("set is not C-compatible")]
    Incompatible,
    #[error("`{0}` is not a member of the set")]
    NotAMember(String),
    #[error("vertex `{0}` is isolated and has no configurations")]
    IsolatedVertex(String),
    #[error("malformed cylinder: {0}")]
    MalformedCylinder(String),
    #[error("truncation depth {depth} too small, need at least {needed}")]
    TooShallow { depth: usize, needed: usize },
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
}
