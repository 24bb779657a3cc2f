use thiserror::Error;

/// Errors raised by the solvers and the file layer.
#[derive(Debug, Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),

    #[error("unknown agent {agent} (instance has {n} agents)")]
    UnknownAgent { agent: usize, n: usize },

    #[error("not a tree: {0}")]
    NotATree(String),

    #[error("epsilon must lie strictly between 0 and 1, got {0}")]
    Epsilon(String),

    #[error("enumeration refused: n = {n} exceeds the limit of {limit}")]
    TooLarge { n: usize, limit: usize },

    #[error("value table too large: {0}")]
    TableTooLarge(String),

    #[error("linear program failed: {0}")]
    Lp(String),

    #[error("{context}: {source}")]
    Parse {
        context: String,
        #[source]
        source: serde_json::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    /// True for errors caused by the caller's data rather than the solver.
    pub fn is_input(&self) -> bool {
        !matches!(self, Error::Lp(_) | Error::TableTooLarge(_))
    }
}
