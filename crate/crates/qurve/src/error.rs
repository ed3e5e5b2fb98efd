use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {msg}")]
    Syntax { line: usize, column: usize, msg: String },
    #[error("invalid tree: {0}")]
    InvalidTree(String),
    #[error("size mismatch: expected {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },
    #[error("quiver is not symmetric: {0}")]
    NotSymmetric(String),
    #[error("not a double quiver: {0}")]
    NotDouble(String),
    #[error("dimension vector is not full: {0}")]
    NotFull(String),
    #[error("necklace is not one-way: contains both `{0}` and `{1}`")]
    NotOneWay(String, String),
    #[error("singular matrix at vertex `{0}`")]
    Singular(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("invalid delta spec: {0}")]
    InvalidSpec(String),
    #[error("empty input: {0}")]
    Empty(&'static str),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Syntax { line: e.line(), column: e.column(), msg: e.to_string() }
    }
}
