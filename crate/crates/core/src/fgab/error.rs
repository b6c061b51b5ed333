use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("invalid invariant factors: {0}")]
    InvalidFactors(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix does not respect relations of domain generator {generator}")]
    NotAHom { generator: usize },
    #[error("subgroups live in different ambient groups")]
    AmbientMismatch,
    #[error("subgroup is not contained in the given group")]
    NotContained,
    #[error("element {0} is not in the subgroup")]
    NotAMember(String),
    #[error("group is infinite")]
    Infinite,
    #[error("group order {order} exceeds bound {bound}")]
    TooLarge { order: String, bound: u64 },
    #[error("map is not well defined: relation {0} has non-zero image")]
    NotWellDefined(String),
    #[error("composition of incompatible homomorphisms")]
    NotComposable,
}

pub type GroupResult<T> = Result<T, GroupError>;
