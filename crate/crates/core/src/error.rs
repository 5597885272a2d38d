use thiserror::Error;

/// Errors raised by the workbench.
///
/// Variants mirror the failure kinds of the individual operations; most carry
/// enough context to be printed directly in a report.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),
    #[error("prime {p} divides a denominator")]
    BadPrime { p: u64 },
    #[error("singular matrix: {0}")]
    Singular(String),
    #[error("tensor is not 1_A-generic: no full-rank slice combination")]
    NoAlpha,
    #[error("actions do not commute: {0}")]
    NotAModule(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("eigenvalues do not split over the rationals (characteristic polynomial {0})")]
    NotSplit(String),
    #[error("module is not local: {0}")]
    NotLocal(String),
    #[error("tagged elements do not generate the module")]
    NotSurjective,
    #[error("module is not concise: {0}")]
    NotConcise(String),
    #[error("111-algebra has dimension {dim}, expected {m}")]
    NotSharp { dim: usize, m: usize },
    #[error("socle condition fails: {0}")]
    SocleCondition(String),
    #[error("invalid pencil: {0}")]
    InvalidPencil(String),
    #[error("unknown catalog entry {0}")]
    UnknownEntry(String),
    #[error("unsupported merge: {0}")]
    UnsupportedMerge(String),
    #[error("least-squares fit unstable: residual {residual:.3}")]
    UnstableFit { residual: f64 },
    #[error("inconsistent catalog data: {0}")]
    Inconsistent(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
