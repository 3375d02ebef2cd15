use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("coordinate ({x}, {y}) of point {index} exceeds the bound 2^30")]
    CoordinateOutOfRange { index: usize, x: i64, y: i64 },

    #[error("points {first} and {second} coincide")]
    DuplicatePoint { first: usize, second: usize },

    #[error("points {0}, {1}, {2} are collinear")]
    NotGeneralPosition(usize, usize, usize),

    #[error("operation needs at least {needed} points, got {got}")]
    DegenerateInput { needed: usize, got: usize },

    #[error("point {0} is not a vertex of the convex hull")]
    NotOnHull(usize),

    #[error("no halving hull vertex found around point {0}")]
    NotFound(usize),

    #[error("point set has odd size {0}")]
    OddSize(usize),

    #[error("{n} points exceed the exhaustive search cap of {cap}")]
    SizeLimit { n: usize, cap: usize },

    #[error("invalid matching: {0}")]
    InvalidMatching(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("generator gave up after {attempts} rejected attempts")]
    GenerationExhausted { attempts: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
