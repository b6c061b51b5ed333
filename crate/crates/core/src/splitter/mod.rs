//! Ideal-preserving splittings: the `Γ` complex, extension and gluing steps,
//! the inductive builder, independent verification, and isomorphism lifting.

pub mod build;
pub mod gamma;
pub mod lift;
pub mod verify;

pub use build::{
    build_ideal_splitting, build_with, extend_splitting, extend_within, glue_comaximal,
    BuildOutcome, PreimageChoice, SplittingFamily, Strategy,
};
pub use gamma::{check_gamma_exact, gamma0, gamma1, gamma_complex, GammaCheck, GammaComplex};
pub use lift::{lift_isomorphism, lift_with_splittings, ComplexIso};
pub use verify::{
    ideal_respecting_splittings, oracle_feasible, respects_ideals, verify_ideal_splitting,
    OracleVerdict, DEFAULT_ORACLE_BOUND,
};

use thiserror::Error;

use crate::fgab::GroupError;
use crate::lattice::LatticeError;
use crate::report::Witness;
use crate::sequences::SequenceError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SplitterError {
    #[error("instance is invalid: failed {0:?}")]
    InvalidInstance(Vec<String>),
    #[error("no splitting of ideal {ideal:?} extends the given data")]
    NoExtension { ideal: String },
    #[error("the sum map onto K1({ideal})[n] is not surjective")]
    GammaNotSurjective { ideal: String, witness: Witness },
    #[error("glued map on ideal {ideal:?} is not well defined")]
    WellDefinedness { ideal: String, witness: Witness },
    #[error("parts do not form a comaximal family under {0:?}")]
    NotComaximal(String),
    #[error("invalid partial splitting: {0}")]
    InvalidTau(String),
    #[error("strategies disagree at ideal {ideal:?}: {detail}")]
    StrategyConflict { ideal: String, detail: String },
    #[error("pairing not respected at ideal {ideal:?}: {detail}")]
    PairingNotRespected { ideal: String, detail: String },
    #[error("{0} is not an isomorphism")]
    NotAnIsomorphism(&'static str),
    #[error("lifted map fails {0}")]
    LiftCheck(String),
    #[error(transparent)]
    Sequence(#[from] SequenceError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

pub type SplitResult<T> = Result<T, SplitterError>;
