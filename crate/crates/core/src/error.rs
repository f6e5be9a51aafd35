use thiserror::Error;

/// Everything that can go wrong in the library.
///
/// Numeric payloads are carried as `f64` regardless of the working scalar.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("graph has no vertices or no edges")]
    EmptyGraph,
    #[error("edge {edge} has non-positive or non-finite length {length}")]
    NonPositiveLength { edge: usize, length: f64 },
    #[error("edge {edge} refers to missing vertex {vertex}")]
    DanglingEndpoint { edge: usize, vertex: usize },
    #[error("vertex {0} has no incident edges")]
    IsolatedVertex(usize),
    #[error("unknown vertex {0}")]
    UnknownVertex(usize),
    #[error("vertex {0} does not carry a Neumann condition")]
    NotNeumann(usize),
    #[error("cannot merge vertex {0} with itself")]
    SameVertex(usize),
    #[error("flux vector has {got} entries but the graph has {expected} independent cycles")]
    FluxDimensionMismatch { expected: usize, got: usize },
    #[error("graph has no cycles, so there is no flux to vary")]
    NoCycles,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("no null vector of I - S D(k) at k = {k}")]
    NoNullVector { k: f64 },
    #[error("counting function {count} at k = {k} leaves the Weyl band [{lower}, {upper}]")]
    WeylViolation { k: f64, count: usize, lower: f64, upper: f64 },
    #[error("k = {k} lies beyond the scanned range (k_max = {k_max})")]
    BeyondScanCeiling { k: f64, k_max: f64 },
    #[error("interlacing fails at index {index}: {detail}")]
    InterlacingViolation { index: usize, detail: String },
    #[error("eigenvalue index {n} out of range ({available} available)")]
    IndexOutOfRange { n: usize, available: usize },

    #[error("eigenvalue {n} has multiplicity {multiplicity}")]
    DegenerateEigenvalue { n: usize, multiplicity: usize },
    #[error("eigenfunction {n} violates the vertex conditions by {residual:e}")]
    ResidualTooLarge { n: usize, residual: f64 },
    #[error("eigenfunction {n} vanishes at vertex {vertex}")]
    VertexZero { n: usize, vertex: usize },
    #[error("merged sequence has a tie at index {n}")]
    CommensurateTie { n: usize },

    #[error("spectral solve failed at flux grid point {point}: {reason}")]
    SolverFailureAtGridPoint { point: usize, reason: String },
    #[error("eigenvalue {n}: flux gradient {gradient:e} does not vanish at zero flux")]
    NotCritical { n: usize, gradient: f64 },
    #[error("eigenvalue {n}: Hessian is degenerate (smallest |eigenvalue| {smallest:e})")]
    DegenerateHessian { n: usize, smallest: f64 },
    #[error("eigenvalue {n}: Morse index {morse} differs from nodal surplus {surplus}")]
    TheoremViolation { n: usize, morse: usize, surplus: i64 },
    #[error("band {band}: eigenvalues at +flux and -flux differ by {difference:e}")]
    SymmetryViolation { band: usize, difference: f64 },
    #[error("determinant of S is {computed}, expected {expected}")]
    DetSMismatch { computed: i64, expected: i64 },

    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("line {line}: {message}")]
    Semantic { line: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
