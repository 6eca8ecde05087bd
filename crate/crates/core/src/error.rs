use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A physical or numerical parameter failed validation.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Exact-integer arithmetic was requested for inputs that are not integers.
    #[error("exact arithmetic requires integer inputs: {0}")]
    Mode(String),

    /// An operation was called outside the set where it is defined.
    #[error("outside the domain of {op}: {reason}")]
    Domain { op: &'static str, reason: String },

    #[error("singular matrix: zero pivot at row {row}")]
    Singular { row: usize },

    /// Integrator settings that violate the step-resolution guard.
    #[error("integrator configuration: {0}")]
    Config(String),

    #[error("integration blew up at t = {time}: {reason}")]
    BlowUp { time: f64, reason: String },

    #[error("precondition failed: {0}")]
    Precondition(String),
}

impl Error {
    /// Errors caused by bad input rather than by a failed computation.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::InvalidParameter(_)
                | Error::Mode(_)
                | Error::Domain { .. }
                | Error::Config(_)
                | Error::Precondition(_)
        )
    }
}
