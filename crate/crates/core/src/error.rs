use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown catalog graph `{0}`")]
    UnknownGraph(String),
    #[error("unknown builtin decomposition `{0}`")]
    UnknownDecomposition(String),
    #[error("vertex index {index} out of range 1..={num_vertices}")]
    VertexOutOfRange { index: usize, num_vertices: usize },
    #[error("edge index {index} out of range 1..={num_edges}")]
    EdgeOutOfRange { index: usize, num_edges: usize },
    #[error("labelling has length {got}, graph has {expected} edges")]
    LabellingLength { got: usize, expected: usize },
    #[error("vector has length {got}, expected {expected}")]
    VectorLength { got: usize, expected: usize },
    #[error("sequence is not a permutation of 1..={0}")]
    NotAPermutation(usize),
    #[error("piece generators are linearly dependent")]
    DependentGenerators,
    #[error("vector is not in the span of the gamma basis")]
    NotInSpan,
    #[error("coordinates do not satisfy property P (k1..k4 natural, k5 integer)")]
    NotPropertyP,
    #[error("coordinate class mismatch: expected {expected}, vector classifies as {actual}")]
    ClassMismatch { expected: String, actual: String },
    #[error("transform result is not a natural vector (vector outside the labelling monoid)")]
    NotRepresentable,
    #[error("labelling is not magic, cannot represent")]
    NotMagic,
    #[error("decomposition violation: {0}")]
    DecompositionViolation(String),
    #[error("insufficient terms: need more than {need} coefficients, got {got}")]
    InsufficientTerms { need: usize, got: usize },
    #[error("denominator ansatz mismatch: numerator has a nonzero term at degree {degree}, beyond the verification margin {margin}")]
    AnsatzMismatch { degree: usize, margin: usize },
    #[error("inconsistent linear system: the given degrees cannot fit the values")]
    InconsistentFit,
    #[error("series truncation bounds differ: {0} vs {1}")]
    BoundMismatch(u32, u32),
    #[error("generator with magic sum 0 makes the truncated expansion infinite")]
    ZeroSumGenerator,
    #[error("cannot derive exponent caps: {0}")]
    CapUnderivable(String),
    #[error("graph too large for brute-force automorphisms: {num_vertices} vertices (limit {limit})")]
    AutomorphismSizeLimit { num_vertices: usize, limit: usize },
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid permutation group: {0}")]
    InvalidGroup(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
