use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("schema error: {0}")]
    Schema(String),
    #[error("topology error: {0}")]
    Topology(String),
    #[error("label error: {0}")]
    Label(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(usize),
    #[error("vertices {0} and {1} are not adjacent (infinite label)")]
    InfiniteLabel(usize, usize),
    #[error("Gram classification supports at most 4 vertices, got {0}")]
    SubsetTooLarge(usize),
    #[error("subset {0:?} is not spherical")]
    NotSpherical(Vec<usize>),
    #[error("triangulation is not metric flag: {0}")]
    NotMetricFlag(String),
    #[error("circuit {0:?} is not an empty Euclidean circuit")]
    NotEmptyCircuit(Vec<usize>),
    #[error("link cycles are not isomorphic as labeled cycles")]
    LinkMismatch,
    #[error("gluing produced an invalid complex: {0}")]
    DegenerateGlue(String),
    #[error("Euclidean vertices {0} and {1} are adjacent")]
    AdjacentEuclideanVertices(usize, usize),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("cell complex invariant violated: {0}")]
    InvariantViolation(String),
    #[error("dual polytope is a simplex; Andreev's conditions do not apply")]
    SimplexInput,
    #[error("internal contradiction: {0}")]
    InternalContradiction(String),
    #[error("generation failed for seed {seed}: {reason}")]
    GenerationFailed { seed: u64, reason: String },
}
