use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("empty input: {0}")]
    EmptyInput(&'static str),
    #[error("{what} out of range: {value} not in [{lo}, {hi}]")]
    OutOfRange {
        what: &'static str,
        value: i64,
        lo: i64,
        hi: i64,
    },
    #[error("not a face of the Minkowski sum")]
    NotAFace,
    #[error("cone is the zero cone")]
    ZeroCone,
    #[error("expected {expected} arguments, got {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("element is not homogeneous")]
    NotHomogeneous,
    #[error("elements live in different spaces ({0} vs {1})")]
    SpaceMismatch(usize, usize),
    #[error("fan dimension mismatch: {0} vs {1}")]
    FanDimMismatch(usize, usize),
    #[error("subspace is not contained in the anchor cone span")]
    NotInAnchorSpan,
    #[error("point is not admissible for the pair of fans")]
    Inadmissible,
    #[error("stable product depends on the admissible point; input fan is not tropical")]
    Unstable,
    #[error("linearly dependent basis")]
    DependentBasis,
    #[error("characters are complex-degenerate: {0}")]
    ComplexDegenerate(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("zero coefficient in term {0}")]
    ZeroCoefficient(usize),
    #[error("inconsistent 2pi scale markers among exponents")]
    MixedScale,
    #[error("contour certification failed: {0}")]
    Certification(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
