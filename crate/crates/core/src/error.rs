use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("relation {relation}: path {path:?} is not composable")]
    NonComposablePath { relation: usize, path: Vec<String> },

    #[error("relation {relation}: paths do not share source and target")]
    MixedEndpoints { relation: usize },

    #[error("invalid module: {0}")]
    InvalidModule(String),

    #[error("arrow `{arrow}`: expected a {expected_rows}x{expected_cols} matrix, got {rows}x{cols}")]
    ShapeMismatch {
        arrow: String,
        expected_rows: usize,
        expected_cols: usize,
        rows: usize,
        cols: usize,
    },

    #[error("relation {0} is not satisfied by the module")]
    RelationNotSatisfied(usize),

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("subspace family is not stable under arrow `{0}`")]
    NotArrowStable(String),

    #[error("submodules are not nested at vertex {0}")]
    InclusionFailure(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("empty point set")]
    EmptyInput,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("not a face of the given polytope or cone")]
    NotAFace,

    #[error("cone {0} is not maximal")]
    NotMaximal(usize),

    #[error("operation requires a nonzero module")]
    ZeroModule,

    #[error("module is not semistable for the given stability vector")]
    NotSemistable,

    #[error("operation requires n = 2, got n = {0}")]
    NotPlanar(usize),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}
