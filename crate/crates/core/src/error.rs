use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("complex has no vertices")]
    EmptyComplex,
    #[error("vertex {vertex} has {found} coordinates, expected {expected}")]
    DimensionMismatch {
        vertex: usize,
        expected: usize,
        found: usize,
    },
    #[error("cell references unknown vertex {0}")]
    UnknownVertex(usize),
    #[error("simplex {0:?} is degenerate")]
    DegenerateSimplex(Vec<usize>),
    #[error("cell {0:?} listed more than once")]
    DuplicateCell(Vec<usize>),
    #[error("interiors of cells {0:?} and {1:?} overlap")]
    OverlappingInteriors(Vec<usize>, Vec<usize>),
    #[error("unknown cell {0}")]
    UnknownCell(usize),
    #[error("empty or inverted range")]
    EmptyRange,
    #[error("need at least {min} vertices, got {got}")]
    TooFewVertices { min: usize, got: usize },
    #[error("invalid simplicial map: {0}")]
    InvalidMap(String),
    #[error("operation needs a one-dimensional complex embedded in R^1")]
    NotOneDimensional,
    #[error("polygon is not convex")]
    NotConvex,
    #[error("polygon is not counterclockwise")]
    NotCounterclockwise,
    #[error("epsilon {epsilon} is not below the minimal extremum gap {gap}")]
    EpsilonTooLarge { epsilon: String, gap: String },
    #[error("integrand is not constant on the fibers of the map")]
    NotFiberConstant,
    #[error("integrand is not continuous")]
    NotContinuous,
    #[error("tied vertex values in the closed star of vertex {0}")]
    TieError(usize),
    #[error("complex is not a closed 1- or 2-manifold")]
    NotManifoldFixture,
    #[error("kernel transforms need a cell-wise constant integrand")]
    NotConstructibleIntegrand,
    #[error("integrand is nonzero on the window boundary")]
    SupportTouchesBoundary,
    #[error("target support {0} does not lie inside the window")]
    SupportOutsideWindow(usize),
    #[error("node {0} has zero total confidence in its neighborhood")]
    ZeroConfidenceNeighborhood(usize),
    #[error("function does not match its complex: {0}")]
    FunctionMismatch(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
