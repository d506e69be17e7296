use thiserror::Error;

/// Errors raised by the library. Negative mathematical verdicts (a failed
/// exactness check, a non-isomorphism) are values in reports, not errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown simplex {0}")]
    UnknownSimplex(String),
    #[error("malformed simplicial data: {0}")]
    Malformed(String),
    #[error("simplicial identity fails on {simplex}: d_{i} d_{j} != d_{jm1} d_{i}", jm1 = .j - 1)]
    Identity { simplex: String, i: usize, j: usize },
    #[error("map does not commute with d_{face} on {simplex}")]
    MapNotSimplicial { simplex: String, face: usize },
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("form of degree {degree} is not a top form on the {dim}-simplex")]
    NotTopForm { dim: usize, degree: usize },
    #[error("incompatible extension data: d_{i} w_{j} != d_{jm1} w_{i}", jm1 = .j - 1)]
    IncompatibleFaces { i: usize, j: usize },
    #[error("subset is not contained in the given simplicial set")]
    NotASubset,
    #[error("operands live on different simplicial sets")]
    HostMismatch,
    #[error("differential does not square to zero in degree {0}")]
    NotAComplex(usize),
    #[error("exhaustion is not nested between levels {0} and {1}")]
    NotNested(usize, usize),
    #[error("form is not compatible with d_{face} on {simplex}")]
    FormNotCompatible { simplex: String, face: usize },
    #[error("degree bound {bound} is below the dimension {dim} of the simplicial set")]
    WindowTooSmall { bound: u32, dim: usize },
    #[error("form does not lie in the truncated complex: {0}")]
    OutsideWindow(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(Hypothesis),
    #[error("no solution: {0}")]
    NoSolution(String),
}

/// Named hypotheses of the constructions, reported when an input violates one.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Hypothesis {
    #[error("U and V must cover X")]
    Cover,
    #[error("U and V must have good intersection")]
    GoodIntersection,
    #[error("the minimal neighbourhood of L must lie in K")]
    NeighbourhoodContainment,
    #[error("L must be contained in K")]
    Containment,
    #[error("the map must be an inclusion")]
    Inclusion,
    #[error("the map f must be proper")]
    ProperMap,
    #[error("V must be locally finite")]
    LocallyFinite,
    #[error("compactly supported forms can only be pulled back along proper maps")]
    ProperPullback,
    #[error("the form must be compactly supported")]
    CompactSupport,
    #[error("the exhaustion must contain the minimal neighbourhood of each level in the next")]
    Exhaustion,
}

pub type Result<T> = std::result::Result<T, Error>;
