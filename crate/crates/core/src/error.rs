use thiserror::Error;

/// Failure while reading one of the line-oriented text formats.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    /// 1-based line number of the offending line.
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("malformed line: {0:?}")]
    Malformed(String),
    #[error("vertex {id} out of range for n = {n}")]
    OutOfRange { id: usize, n: usize },
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("expected {expected} entries, found {found}")]
    CountMismatch { expected: usize, found: usize },
    #[error("position {0} assigned twice")]
    DuplicatePosition(usize),
    #[error("vertex {0} listed twice")]
    DuplicateVertex(usize),
    #[error("vertex {0} has no position")]
    MissingVertex(usize),
}

impl ParseError {
    pub(crate) fn new(line: usize, kind: ParseErrorKind) -> Self {
        Self { line, kind }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invalid edge {0}-{1}")]
    InvalidEdge(usize, usize),
    #[error("infeasible generator parameters: n = {n}, delta = {delta}")]
    InfeasibleGenerator { n: usize, delta: f64 },
    #[error("labels are not a permutation of 1..={0}")]
    NotAPermutation(usize),
    #[error("layout covers {layout} vertices but the graph has {graph}")]
    LayoutSizeMismatch { layout: usize, graph: usize },
    #[error("exact search refused: n = {n} exceeds cap {cap}")]
    OracleCapExceeded { n: usize, cap: usize },
    #[error("invalid sampling parameter: {0}")]
    InvalidParams(String),
    #[error("sample size {size} out of range for n = {n}")]
    SampleSize { size: usize, n: usize },
    #[error("no dominating root set found after {attempts} attempts")]
    CertificationFailed { attempts: usize },
    #[error("root set is not certified as dominating")]
    Uncertified,
    #[error("box size {boxsize} out of range for n = {n}")]
    BoxSize { boxsize: usize, n: usize },
    #[error("placement does not match the root set or box configuration")]
    PlacementMismatch,
    #[error("interval {lo}..={hi} out of range for {boxes} boxes")]
    IntervalOutOfRange { lo: usize, hi: usize, boxes: usize },
    #[error("matching is not perfect: {size} of {n}")]
    NotPerfect { size: usize, n: usize },
    #[error("flow value {value} is below n = {n}")]
    NotSaturating { value: usize, n: usize },
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("no feasible configuration for any box size in {lo}..={hi}")]
    NoFeasibleConfiguration { lo: usize, hi: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
