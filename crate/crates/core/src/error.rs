use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised by the library layer.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("grid undefined on empty archive")]
    EmptyArchive,

    #[error("decision vector out of bounds at dimension {dim}: {value} not in [{lower}, {upper}]")]
    OutOfBounds {
        dim: usize,
        value: f64,
        lower: f64,
        upper: f64,
    },

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("invalid configuration: {}", .0.join("; "))]
    InvalidConfig(Vec<String>),

    #[error("no analytic reference front for {0}; supply one via file")]
    NoAnalyticFront(String),

    #[error("{metric} undefined: needs at least {required} points, got {actual}")]
    TooFewPoints {
        metric: &'static str,
        required: usize,
        actual: usize,
    },

    #[error("empty front")]
    EmptyFront,

    #[error("empty sample")]
    EmptySample,

    #[error("inconsistent algorithm sets: {0}")]
    InconsistentAlgorithms(String),

    #[error("unknown problem id `{0}`")]
    UnknownProblem(String),
}
