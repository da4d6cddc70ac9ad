use phaseforge_core::Error as CoreError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 1 for a failed hypothesis or verdict, 2 for usage and parse problems.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if is_domain_failure(e) => 1,
            _ => 2,
        }
    }
}

fn is_domain_failure(e: &CoreError) -> bool {
    matches!(
        e,
        CoreError::NotMetzler
            | CoreError::NotNonnegative { .. }
            | CoreError::NotExcitable
            | CoreError::NotStable
            | CoreError::NonpositiveZ { .. }
            | CoreError::NonpositiveNu { .. }
            | CoreError::EigenvectorMismatch { .. }
            | CoreError::ExitIdentity { .. }
            | CoreError::ZeroMass
            | CoreError::PsiOutOfRange(_)
            | CoreError::ZeroDensityAtOrigin
            | CoreError::SingularMatrix
            | CoreError::NoConvergence { .. }
    )
}
