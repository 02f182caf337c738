use thiserror::Error;

/// Low-level failure reported by the numerical building blocks.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericalFailure {
    #[error("quadrature did not reach tolerance (estimate {value:e}, error estimate {error:e})")]
    Quadrature { value: f64, error: f64 },
    #[error("function value is not finite at x = {x:e}")]
    NonFinite { x: f64 },
    #[error("no sign change in bracket [{lo:e}, {hi:e}]")]
    NoBracket { lo: f64, hi: f64 },
    #[error("{0}")]
    Other(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("numerical failure in {module} at {point}: {failure}")]
    Numerical {
        module: &'static str,
        point: String,
        failure: NumericalFailure,
    },
    #[error("numerical anomaly in {module} at {point}: {detail}")]
    Anomaly {
        module: &'static str,
        point: String,
        detail: String,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn param(name: &'static str, value: f64, reason: &'static str) -> Self {
        Error::InvalidParameter {
            name,
            value,
            reason,
        }
    }

    /// True for failures that originate in the numerics rather than in the input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::Numerical { .. } | Error::Anomaly { .. })
    }
}

/// Attaches a module name and a parameter description to a low-level failure.
pub(crate) trait Context<T> {
    fn at(self, module: &'static str, point: impl FnOnce() -> String) -> Result<T>;
}

impl<T> Context<T> for std::result::Result<T, NumericalFailure> {
    fn at(self, module: &'static str, point: impl FnOnce() -> String) -> Result<T> {
        self.map_err(|failure| Error::Numerical {
            module,
            point: point(),
            failure,
        })
    }
}
