use thiserror::Error;

use crate::poly::Var;

#[derive(Debug, Error)]
pub enum Error {
    #[error("polynomial variables differ: {left:?} vs {right:?}")]
    VarMismatch { left: Vec<Var>, right: Vec<Var> },
    #[error("half-integer exponent where an integer one is required")]
    HalfIntegerExponent,
    #[error("zero polynomial has no normalization")]
    ZeroPolynomial,
    #[error("Poincaré polynomial with a negative coefficient")]
    NegativePoincare,
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("diagram is not a link diagram: {0}")]
    NotALink(String),
    #[error("move does not match: {0}")]
    PatternMismatch(String),
    #[error("replacement choice does not fit the graph: {0}")]
    ChoiceMismatch(String),
    #[error("{assignments} replacement assignments exceed the cap of {cap}")]
    TooManyAssignments { assignments: u128, cap: u128 },
    #[error("{crossings} crossings exceed the cap of {cap}")]
    TooManyCrossings { crossings: usize, cap: usize },
    #[error("skein recursion exceeded depth {0}")]
    RecursionDepth(usize),
    #[error("grid size {n} exceeds the cap of {cap} ({generators} generators)")]
    GridTooLarge { n: usize, cap: usize, generators: u128 },
    #[error("estimated memory {needed} bytes exceeds the limit of {limit} bytes")]
    MemoryLimit { needed: u128, limit: u128 },
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("grid routing failed: {0}")]
    Routing(String),
    #[error("deconvolution is not exact: {0}")]
    Deconvolution(String),
    #[error("partial result: {} completed, skipped {}", completed.len(), skipped.join("; "))]
    Partial { completed: Vec<usize>, skipped: Vec<String> },
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
