use thiserror::Error;

/// Errors produced anywhere in the crate.
///
/// Variants are grouped loosely by the layer that raises them: linear algebra,
/// polynomial root counting, spline construction, and box-spline evaluation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is singular")]
    Singular,

    #[error("vectors do not span the ambient space (rank {rank} < {dim})")]
    RankDeficient { rank: usize, dim: usize },

    #[error("parse error: {0}")]
    Parse(String),

    /// The zero polynomial has infinitely many roots; callers must branch on
    /// identically-zero pieces before counting.
    #[error("the zero polynomial has infinitely many roots")]
    InfiniteRoots,

    #[error("empty interval: [{0}, {1}]")]
    EmptyInterval(String, String),

    #[error("knots must be strictly increasing")]
    KnotOrder,

    #[error("a spline needs at least two knots, got {0}")]
    TooFewKnots(usize),

    #[error("expected {expected} pieces for {knots} knots, got {found}")]
    PieceCount {
        knots: usize,
        expected: usize,
        found: usize,
    },

    #[error("piece {piece} has degree {found} > {degree}")]
    PieceDegree {
        piece: usize,
        degree: usize,
        found: usize,
    },

    #[error("spline is not C^{order} at knot {knot}: derivative {derivative} jumps")]
    NotSmooth {
        knot: String,
        order: usize,
        derivative: usize,
    },

    #[error("degree error: {0}")]
    Degree(String),

    #[error("{0} lies outside the admissible range")]
    OutOfRange(String),

    #[error("{0} is already a knot")]
    KnotExists(String),

    #[error("duplicate shift {0} in B-spline combination")]
    DuplicateShift(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid vector configuration: {0}")]
    InvalidVectors(String),

    /// An internal consistency check failed. Seeing this is a bug.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
