use thiserror::Error;

use crate::polyalg::Polynomial;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("division by an interval containing zero")]
    DivisionByZero,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("interval straddles the breakpoint at {0}; request a one-sided derivative")]
    StraddlesBreakpoint(String),
    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial is not squarefree; common factor with derivative: {factor}")]
    NotSquarefree { factor: Polynomial },
    #[error("invalid number literal {0:?}")]
    InvalidLiteral(String),
    #[error("coincident points {0} and {1}")]
    CoincidentPoints(usize, usize),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}
