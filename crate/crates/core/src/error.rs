use thiserror::Error;

/// Every failure the library can report. `code()` gives a stable kebab-case
/// tag that the command-line front end prints on its single error line.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("ordering {ordering} has no interface matching conditions")]
    UnsupportedMatching { ordering: String },

    #[error("analytic method unavailable for ordering {ordering}: {reason}")]
    UnsupportedAnalytic { ordering: String, reason: String },

    #[error("singular interface: matching denominator vanished at E = {energy}")]
    SingularInterface { energy: f64 },

    #[error("no bound state: {0}")]
    NoBoundState(String),

    #[error("well condition violated: {0}")]
    WellCondition(String),

    #[error("condition violated: {inequality} ({detail})")]
    ConditionViolation { inequality: &'static str, detail: String },

    #[error("non-isotonic regime: g = {g} < -1/2")]
    NonIsotonic { g: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("{what} did not converge within {terms} terms (error estimate {estimate:e})")]
    NonConvergence { what: &'static str, terms: usize, estimate: f64 },

    #[error("numerical inconsistency: {0}")]
    NumericalInconsistency(String),

    #[error("energy {energy} is not a root of the matching determinant (residual {residual:e})")]
    NotARoot { energy: f64, residual: f64 },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidParameter(_) => "invalid-parameter",
            Error::UnsupportedMatching { .. } => "unsupported-matching",
            Error::UnsupportedAnalytic { .. } => "unsupported-analytic",
            Error::SingularInterface { .. } => "singular-interface",
            Error::NoBoundState(_) => "no-bound-state",
            Error::WellCondition(_) => "well-condition",
            Error::ConditionViolation { .. } => "condition-violation",
            Error::NonIsotonic { .. } => "non-isotonic",
            Error::Domain(_) => "domain",
            Error::NonConvergence { .. } => "non-convergence",
            Error::NumericalInconsistency(_) => "numerical-inconsistency",
            Error::NotARoot { .. } => "not-a-root",
            Error::Config(_) => "config",
            Error::Io(_) => "io",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
