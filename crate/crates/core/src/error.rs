use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("position out of bounds: {what} (trace length {len})")]
    OutOfBounds { what: String, len: usize },

    #[error("invalid action name {0:?}: must be non-empty, whitespace-free and not `i` or `o`")]
    InvalidAction(String),

    #[error("invalid arc {src} -> {dst}: {reason}")]
    InvalidArc {
        src: String,
        dst: String,
        reason: &'static str,
    },

    #[error("state {state} already has a transition on {label}")]
    Nondeterministic { state: usize, label: String },

    #[error("event log is empty")]
    EmptyLog,

    #[error("language is empty")]
    EmptyLanguage,

    #[error("denominator language has zero size")]
    ZeroDenominator,

    #[error("power iteration did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("({p1}, {p2}) is not a breeding site for k = {k}")]
    InvalidSite { p1: usize, p2: usize, k: usize },

    #[error("no data to aggregate")]
    EmptyData,

    #[error("filtering removed every trace from the log")]
    AllFiltered,

    #[error("the output node is unreachable from the input node")]
    Unreachable,

    #[error("{attempts} consecutive walks exceeded the length cap of {max_length}")]
    RetryExhausted { attempts: usize, max_length: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("replicate {index}: {source}")]
    Replicate {
        index: usize,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    /// Strips any replicate annotation.
    pub fn root(&self) -> &Error {
        match self {
            Error::Replicate { source, .. } => source.root(),
            other => other,
        }
    }
}
