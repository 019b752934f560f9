use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0}")]
    Parse(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("singular matrix")]
    SingularMatrix,
    #[error("zero vector where a nonzero one is required")]
    ZeroVector,
    #[error("vector is not in the lattice")]
    NotInLattice,
    #[error("sublattice row {0} is not contained in the lattice")]
    NotSublattice(usize),
    #[error("sublattice rows are linearly dependent")]
    Degenerate,
    #[error("fan has no maximal cones")]
    EmptyFan,
    #[error("cone {0} is not simplicial: {1}")]
    NonSimplicial(usize, String),
    #[error("cone {0} is not full-dimensional")]
    NotFullDimensional(usize),
    #[error("invalid fan: {0}")]
    InvalidFan(String),
    #[error("fan is not the boundary fan of a simplex")]
    WrongShape,
    #[error("instance too large: {0}")]
    TooLarge(String),
    #[error("invalid weights: {0}")]
    InvalidWeights(String),
    #[error("fiber simplex does not contain the origin in its interior")]
    DegenerateSimplex,
    #[error("lattice map is not surjective")]
    NonSurjective,
    #[error("not a valid Mori fiber space: {0}")]
    InvalidMfs(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("point is not in the base lattice")]
    NotInBaseLattice,
    #[error("no close pair found among {0} points")]
    NoPairFound(usize),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
}
