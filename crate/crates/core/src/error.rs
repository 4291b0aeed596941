use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed number `{0}`")]
    MalformedNumber(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("utility vector c must be nonzero")]
    ZeroUtility,
    #[error("point is not integral")]
    NonIntegral,
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("{what} of size {size} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        size: u128,
        cap: u128,
    },
    #[error("k = {k} out of range 1..={n}")]
    DegreeOutOfRange { k: usize, n: usize },
    #[error("generator {0} is not a symmetry of the instance")]
    NotASymmetry(String),
    #[error("utility vector is not parallel to (1,...,1)")]
    NotTransitiveUtility,
    #[error("point is infeasible")]
    InfeasiblePoint,
    #[error("point is already a neighbor of its layer")]
    AlreadyNeighbor,
    #[error(
        "no group element satisfies the mapping constraints; the group is not transitive enough"
    )]
    MappingNotFound,
    #[error("descent postcondition violated: {0}")]
    Postcondition(String),
    #[error("empty box: lower bound {lower} > upper bound {upper} at coordinate {coord}")]
    EmptyBox {
        coord: usize,
        lower: i64,
        upper: i64,
    },
    #[error("integer overflow in enumeration (entries too large for machine arithmetic)")]
    Overflow,
    #[error("{0}")]
    Report(String),
}
