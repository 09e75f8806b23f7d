use crate::spec::ParseError;

/// Failures of a CLI invocation, each tied to a fixed process exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Usage(String),
    #[error("size limit exceeded: {0}")]
    Cap(String),
    #[error("input does not match the schema: {0}")]
    Schema(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    /// 0 ok, 1 verification failure, 2 parse/usage, 3 size cap, 4 schema, 5 precondition.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verification(_) | CliError::Internal(_) => 1,
            CliError::Parse(_) | CliError::Usage(_) => 2,
            CliError::Cap(_) => 3,
            CliError::Schema(_) => 4,
            CliError::Precondition(_) => 5,
        }
    }
}

impl From<qell::Error> for CliError {
    fn from(e: qell::Error) -> Self {
        use qell::Error as E;
        let text = e.to_string();
        match e {
            E::GroupTooLarge { .. } => CliError::Cap(text),
            E::InvalidGenerator(_) | E::UnknownFamily(_) | E::ParameterOutOfRange(_) => {
                CliError::Usage(text)
            }
            E::GroupMismatch | E::ContextMismatch | E::NotCharacterCombination => CliError::Schema(text),
            E::NotHomomorphism(_)
            | E::ImageUndefined(_)
            | E::NotSubgroup
            | E::InvalidAction(_)
            | E::ScalarContext(_)
            | E::NonPositiveRescale
            | E::NotEquivariant
            | E::ActionNotFree
            | E::ActionNotTrivial
            | E::Precondition(_) => CliError::Precondition(text),
            E::Internal(_) => CliError::Internal(text),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Schema(format!("cannot read or write: {e}"))
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Schema(e.to_string())
    }
}
