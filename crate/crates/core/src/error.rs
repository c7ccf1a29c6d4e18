use thiserror::Error;

/// Errors raised by the graph, algebra and search layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("self-loop at vertex {0}")]
    LoopEdge(usize),
    #[error("edge ({0}, {1}) appears more than once")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    OutOfRange { vertex: usize, n: usize },
    #[error("graphs are limited to {max} vertices, got {n}")]
    TooManyVertices { n: usize, max: usize },
    #[error("empty vertex set")]
    EmptySet,
    #[error("vertex sets overlap")]
    Overlap,
    #[error("edge ({0}, {1}) is not present in the graph")]
    UnknownEdge(usize, usize),
    #[error("vector length {got} does not match edge count {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("graph has {0} vertices, at least 3 are required")]
    TooSmall(usize),
    #[error("the paths do not form a union of disjoint paths: {0}")]
    NotUdp(String),
    #[error("u and v must be distinct")]
    SameVertex,
    #[error("endpoint {0} lies in the requested interior")]
    EndpointInInterior(usize),
    #[error("k must be at least 2, got {0}")]
    KTooSmall(usize),
    #[error("k = {k} outside 1..={n}")]
    KOutOfRange { k: usize, n: usize },
    #[error("X and Y do not form a bipartition of the graph: {0}")]
    BadPartition(String),
    #[error("bipartition sides differ in size ({0} vs {1})")]
    NotBalanced(usize, usize),
    #[error("edge set is not a matching of the graph: {0}")]
    NotMatching(String),
    #[error("paths share vertex {0}")]
    NotDisjoint(usize),
    #[error("consecutive vertices ({0}, {1}) are not adjacent")]
    NonEdge(usize, usize),
    #[error("degree violation at vertex {0}")]
    DegreeViolation(usize),
    #[error("edge ({0}, {1}) lies inside one side of the bipartition")]
    NotBipartiteInput(usize, usize),
    #[error("exhaustive check needs {needed} steps, limit is {limit}")]
    BudgetExceeded { needed: u128, limit: u128 },
    #[error("deletion budget m = {m} must be below n = {n}")]
    MTooLarge { m: usize, n: usize },
    #[error("empty path in a linear forest")]
    EmptyPath,
    #[error("vertex pairs overlap at vertex {0}")]
    PairsOverlap(usize),
    #[error("graph has an even number of vertices ({0})")]
    EvenOrder(usize),
    #[error("graph is not Hamiltonian")]
    NotHamiltonian,
    #[error("graph is already Hamilton-generated; no R-subgraph is implied")]
    AlreadyGenerated,
    #[error("partition quantifier too large: {0} vertices (limit 24)")]
    PartitionTooLarge(usize),
    #[error("cycle length bound must be even and at least 4, got {0}")]
    BadLength(usize),
    #[error("invalid parity-switcher: {0}")]
    BadSwitcher(String),
    #[error("connecting path is invalid: {0}")]
    BadPath(String),
    #[error("A0 and B0 must both have size {expected}, got {a} and {b}")]
    BadSizes { expected: usize, a: usize, b: usize },
    #[error("witness shape does not fit the requested lemma: {0}")]
    ShapeMismatch(String),
    #[error("parameter {name} must lie strictly between 0 and 1")]
    BadParameter { name: &'static str },
    #[error("edge-list parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
