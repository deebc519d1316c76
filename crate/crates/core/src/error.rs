use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: cannot parse {content:?} as a positive ordinate")]
    Parse { line: usize, content: String },
    #[error("zero table is empty")]
    EmptyTable,
    #[error("duplicate ordinate {value} at sorted position {index}")]
    DuplicateOrdinate { index: usize, value: f64 },
    #[error("malformed zero cache: {0}")]
    Cache(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("pole or branch cut: {0}")]
    Pole(String),
    #[error("overflow: {0}")]
    Overflow(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("no c1 value available for alpha = {alpha}")]
    MissingC1 { alpha: f64 },
    #[error("ill-conditioned fit (condition number {condition:.3e})")]
    IllConditioned { condition: f64 },
    #[error("insufficient truncation range: alpha*s*tau_max = {actual:.3} < {required}")]
    InsufficientRange { required: f64, actual: f64 },
    #[error("network error: {0}")]
    Network(String),
    #[error("server returned status {0}")]
    HttpStatus(u16),
    #[error("{0}")]
    Usage(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
