//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeomError {
    #[error("the zero triple is not a direction")]
    ZeroVector,
    #[error("a line needs (a, b) ≠ (0, 0)")]
    DegenerateLine,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConstructError {
    #[error("n = {n} is too small for k = {k}: need at least {min}")]
    TooFewPoints { k: usize, n: usize, min: usize },
    #[error("k = {k} is invalid for {op}: {why}")]
    BadK {
        op: &'static str,
        k: usize,
        why: &'static str,
    },
    #[error("injectivity filtering exhausted the seed set ({op}): {detail}")]
    FilterExhausted { op: &'static str, detail: String },
    #[error("duplicate parameter values: {0}")]
    DuplicateParams(String),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("duplicate point at indices {0} and {1}")]
    DuplicatePoints(usize, usize),
    #[error("expected a bipartite pattern graph matching (line slots, circle slots)")]
    NotBipartite,
    #[error("part count mismatch: graph has {got}, pattern needs {want}")]
    PartMismatch { got: usize, want: usize },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CountError {
    #[error("k must be at least {min}, got {k}")]
    BadK { k: usize, min: usize },
    #[error("graph has no antipodal side data")]
    MissingAntipodalData,
    #[error("configuration carries no designated pattern")]
    PatternMissing,
    #[error("pattern was built for k = {pattern_k}, requested k = {k}")]
    PatternKMismatch { pattern_k: usize, k: usize },
    #[error("graph has no part structure for multipartite counting")]
    PartsMissing,
    #[error("part count mismatch: graph has {got}, pattern needs {want}")]
    PartMismatch { got: usize, want: usize },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FitError {
    #[error("need at least 3 series points, got {0}")]
    TooFewPoints(usize),
    #[error("predicted count {estimate} at size {size} exceeds the {budget} budget")]
    BudgetExceeded {
        size: u64,
        estimate: String,
        budget: String,
    },
    #[error("no single predicted exponent for cycles of length {0}; see the bound table")]
    GapRow(usize),
    #[error("construction error while scaling: {0}")]
    Construct(String),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IoError {
    #[error("parse error: {0}")]
    Parse(String),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LpError {
    #[error("graph is not 3-regular (vertex {vertex} has degree {degree})")]
    NotCubic { vertex: usize, degree: usize },
    #[error("type pair is not realizable: {0}")]
    NotRealizable(String),
    #[error("linear program infeasible; violated rows {0:?}")]
    Infeasible(Vec<usize>),
    #[error("linear program unbounded")]
    Unbounded,
    #[error("sweep limited to k ≤ {max}, got k = {k}")]
    TooLarge { k: usize, max: usize },
    #[error("malformed graph: {0}")]
    BadGraph(String),
}
