use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid generator: {0}")]
    InvalidGenerator(String),
    #[error("group too large: order exceeds cap {cap}")]
    GroupTooLarge { cap: usize },
    #[error("unknown group family `{0}`")]
    UnknownFamily(String),
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("not a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("image undefined: {0}")]
    ImageUndefined(String),
    #[error("not a subgroup")]
    NotSubgroup,
    #[error("invalid group action: {0}")]
    InvalidAction(String),
    #[error("rebuild scalar context: {0}")]
    ScalarContext(String),
    #[error("group mismatch")]
    GroupMismatch,
    #[error("not a character combination")]
    NotCharacterCombination,
    #[error("context mismatch")]
    ContextMismatch,
    #[error("rescale factor must be positive")]
    NonPositiveRescale,
    #[error("map is not equivariant")]
    NotEquivariant,
    #[error("action not free")]
    ActionNotFree,
    #[error("H-action not trivial")]
    ActionNotTrivial,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
