use thiserror::Error;

/// Errors raised by graph construction, burning, and the constructive procedures.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("{0}-{1} is not an edge")]
    NotAnEdge(usize, usize),

    #[error("invalid input: {0}")]
    Input(String),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("{0}")]
    Domain(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    /// A construction produced something its guarantee rules out.
    #[error("internal consistency defect: {0}")]
    Defect(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn defect(msg: impl Into<String>) -> Self {
        Error::Defect(msg.into())
    }

    pub fn is_budget_exceeded(&self) -> bool {
        matches!(self, Error::BudgetExceeded(_))
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
