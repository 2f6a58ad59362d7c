use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("basis must have at least one generator")]
    EmptyBasis,
    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),
    #[error("bad generator name `{0}`")]
    BadGeneratorName(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("words or endomorphisms are over different bases")]
    BasisMismatch,
    #[error("endomorphism has {got} images for a basis of rank {rank}")]
    ImageCount { rank: usize, got: usize },
    #[error("endomorphism is not injective")]
    NotInjective,
    #[error("negative search depth")]
    NegativeDepth,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundaryError {
    #[error("morphic ray is stationary: the seed's image adds no letters")]
    StationaryRay,
    #[error("seed `{0}` is not a proper prefix of its image")]
    SeedNotPrefix(String),
    #[error("eventually periodic word needs a nonempty period")]
    EmptyPeriod,
    #[error("prefix and period do not form a reduced infinite word")]
    NotReduced,
    #[error("fixed-subgroup certificate invalid: generator `{0}` is not fixed")]
    NotFixed(String),
    #[error("ray generation did not converge within the iteration budget")]
    Diverged,
    #[error(transparent)]
    Word(#[from] WordError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("duplicate name `{0}`")]
    Duplicate(String),
    #[error("edge sequence is not a path: {0}")]
    NotAdjacent(String),
    #[error("image of edge `{edge}` is incompatible with vertex images: {reason}")]
    Incompatible { edge: String, reason: String },
    #[error("non-isolated interior fixed set on edge `{0}`")]
    NonIsolated(String),
    #[error("vertex `{0}` is not fixed")]
    NotFixed(String),
    #[error("route must run from the base vertex to its image")]
    BadRoute,
    #[error("component is not a circle")]
    NotCircle,
    #[error("subgraph is not invariant under the map")]
    NotInvariant,
    #[error("graph map is not π₁-injective")]
    NotInjective,
    #[error("graph is not connected")]
    Disconnected,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RttError {
    #[error("spectral radius {0} ≤ 1: not an expanding stratum")]
    NotExpanding(f64),
    #[error("transition matrix is reducible")]
    Reducible,
    #[error("filtration level {level} is not invariant (edge `{edge}` leaves it)")]
    NotInvariant { level: usize, edge: String },
    #[error("filtration level {0} does not contain the lower level")]
    NotNested(usize),
    #[error("unclassifiable stratum {edges:?}: {reason}; refine filtration")]
    Unclassifiable { edges: Vec<String>, reason: String },
    #[error("structure violation: {0}")]
    StructureViolation(String),
    #[error("endpoints of candidate Nielsen path are not fixed")]
    EndpointsNotFixed,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum InvariantError {
    #[error("circle of degree 0 is not π₁-injective")]
    DegreeZero,
    #[error("local index {local} and recursive index {recursive} disagree for class {class}")]
    IndexMismatch { class: String, local: i64, recursive: i64 },
    #[error("Lefschetz number {lefschetz} differs from index sum {sum}")]
    LefschetzMismatch { lefschetz: i64, sum: i64 },
    #[error("recursive partition disagrees with bounded Nielsen path search: {0}")]
    PartitionMismatch(String),
    #[error("attracting ray count {rays} differs from the recursion increment {increment} for class {class}")]
    RayCountMismatch { class: String, rays: usize, increment: i64 },
    #[error("structure violation: {0}")]
    StructureViolation(String),
    #[error(transparent)]
    Rtt(#[from] RttError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Boundary(#[from] BoundaryError),
}

/// Errors at the file boundary.
#[derive(Debug, Error)]
pub enum InputError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Boundary(#[from] BoundaryError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
