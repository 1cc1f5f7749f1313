use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An input lies outside the tunneling regime or an operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Quadrature refinement reached its panel cap before meeting `rel_tol`.
    #[error("quadrature did not converge on [{a}, {b}] after {panels} panels (estimate {estimate:e}, error {error:e})")]
    NoConvergence {
        a: f64,
        b: f64,
        panels: usize,
        estimate: f64,
        error: f64,
    },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("validation error: {0}")]
    Validation(String),

    #[error("missing grid point: E/V0={e_over_v0}, d={d_nm} nm")]
    MissingGridPoint { e_over_v0: f64, d_nm: f64 },

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// Process exit code used by the CLI.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } | Error::Validation(_) => 1,
            Error::MissingGridPoint { .. } => 2,
            Error::Domain(_) | Error::NoConvergence { .. } | Error::Io(_) => 3,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
