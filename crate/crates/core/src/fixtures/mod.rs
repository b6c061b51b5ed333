//! Instance constructors: aligned and twisted models, random instances,
//! planted defects, the `D_p` truncations, and coefficient families.

pub mod aligned;
pub mod defects;
pub mod dp;
pub mod family;
pub mod random;
pub mod transport;

pub use aligned::{direct_sum_instance, section_through, Aligned, LatticeSpec};
pub use defects::{plant_defect, DefectKind};
pub use dp::{dp_truncation, DpElement, DpTruncation};
pub use family::aligned_family;
pub use random::{random_aligned, random_family, random_instance, RandomBounds};
pub use transport::{random_automorphism, random_element, random_hom, transport, twist, twist_automorphism};

use thiserror::Error;

use crate::fgab::GroupError;
use crate::kunneth::{CoherenceError, InstanceError};
use crate::lattice::LatticeError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FixtureError {
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("lattice spec is not monotone along {0:?} <= {1:?}")]
    NonMonotone(String, String),
    #[error("defect not applicable: {0}")]
    NotApplicable(String),
    #[error("internal fixture error: {0}")]
    Internal(String),
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Coherence(#[from] CoherenceError),
}
