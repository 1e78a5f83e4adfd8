use thiserror::Error;

use crate::linalg::LinalgError;
use crate::scalars::ScalarError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("expected a line (vector dimension 2), got dimension {0}")]
    NotALine(usize),
    #[error("expected a point (vector dimension 1), got dimension {0}")]
    NotAPoint(usize),
    #[error("expected a plane (vector dimension 3), got dimension {0}")]
    NotAPlane(usize),
    #[error("expected vector dimension {expected}, got {got}")]
    BadDimension { expected: usize, got: usize },
    #[error("bivector is zero")]
    ZeroBivector,
    #[error("point is not on the Klein quadric")]
    NotOnQuadric,
    #[error("linear complex is special; it has no null polarity")]
    SpecialComplex,
    #[error("lines are not pairwise skew")]
    NotSkew,
    #[error("plane section of the Klein quadric is not a nondegenerate conic")]
    DegenerateConic,

    #[error("bad structure constants: {0}")]
    BadStructureConstants(String),
    #[error("algebra is not a division algebra, zero divisor witness {witness}")]
    NotDivisionAlgebra { witness: String },
    #[error("case and characteristic are incompatible: {0}")]
    CharMismatch(String),
    #[error("validation level {level} cannot certify this algebra: {reason}")]
    Uncertifiable { level: String, reason: String },
    #[error("zero divisor encountered: {witness} has norm zero")]
    ZeroDivisor { witness: String },
    #[error("element must be nonzero")]
    ZeroElement,
    #[error("linear map is singular")]
    SingularMap,

    #[error("kernel has dimension {0}, expected 3")]
    KernelDimensionUnexpected(usize),
    #[error("star plane meets the class solid in dimension {0}, expected a point")]
    MeetNotAPoint(usize),
    #[error("points must be non-collinear")]
    NonCollinearRequired,
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("lines belong to the same parallel class")]
    SameClass,
    #[error("bad configuration: {0}")]
    BadConfiguration(String),
    #[error("bad linear form: {0}")]
    BadForm(String),
}

pub type Result<T> = std::result::Result<T, Error>;
