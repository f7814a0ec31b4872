use crate::linalg::LogError;

/// Errors raised by constructors and operations.
///
/// Axiom failures found by a checker are reported through
/// [`ValidityReport`](crate::report::ValidityReport); `Error::Axiom` is only
/// produced when a constructor refuses to build an object whose laws fail.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// Inconsistent dimensions or out-of-range table entries.
    #[error("structural error: {0}")]
    Shape(String),

    #[error("{law} violated (max residual {residual:e})")]
    Axiom { law: String, residual: f64 },

    #[error("precondition failed: {0}")]
    Precondition(String),

    /// A vector was expected to lie in a subspace and does not.
    #[error("not a member of the required subspace: {0}")]
    Membership(String),

    /// Group coordinates left the exponential chart.
    #[error("outside the coordinate chart: {0}")]
    Chart(String),

    /// A local action or product was evaluated outside its domain.
    #[error("outside the domain of definition: {0}")]
    Domain(String),

    /// The requested construction needs input the caller did not provide.
    #[error("{0}")]
    Capability(String),

    #[error(transparent)]
    Log(#[from] LogError),
}

impl Error {
    pub(crate) fn shape(msg: impl Into<String>) -> Self {
        Error::Shape(msg.into())
    }

    /// True for errors that stem from leaving a local domain (chart or action domain).
    pub fn is_domain_exit(&self) -> bool {
        matches!(self, Error::Chart(_) | Error::Domain(_) | Error::Log(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
