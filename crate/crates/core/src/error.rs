use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("field characteristic {0} is not a supported prime (must be prime and below 2^31)")]
    NotPrime(u64),

    #[error("malformed algebra description: {0}")]
    Parse(String),

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),

    #[error("relation {relation} is not admissible: {reason}")]
    NonAdmissible { relation: usize, reason: String },

    #[error(
        "algebra is not finite dimensional within length bound {bound}: some path of length {bound} \
         is not in the ideal; raise `length_bound` if the ideal is admissible"
    )]
    NotFiniteDimensional { bound: usize },

    #[error("invalid module: {0}")]
    InvalidModule(String),

    #[error("invalid module map: {0}")]
    InvalidMap(String),

    #[error("objects belong to different algebras")]
    AlgebraMismatch,

    #[error("decomposition search stalled on a module of dimension {0}")]
    DecompositionFailure(usize),

    #[error("indecomposable enumeration incomplete: {0}")]
    IncompleteEnumeration(String),

    #[error("object is not presilting: Hom(u, Σu') has dimension {dim} for summands {source_index} -> {target_index}")]
    NotPresilting { dim: usize, source_index: usize, target_index: usize },

    #[error("mapping cone leaves the two-term window")]
    WindowViolation,

    #[error("bijection violated: {0}")]
    BijectionViolation(String),

    #[error("{0}")]
    TooLarge(String),

    #[error("complex expression: {0}")]
    Expression(String),
}

pub type Result<T> = std::result::Result<T, Error>;
