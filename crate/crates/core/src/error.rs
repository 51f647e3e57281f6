use thiserror::Error;

/// Errors raised while building or querying Bott matrices and their invariants.
///
/// Row and column numbers are 1-based, matching the usual `c_{i,j}` notation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix has no rows")]
    Empty,
    #[error("row {row} has {found} entries, expected {expected}")]
    NonSquare {
        row: usize,
        found: usize,
        expected: usize,
    },
    #[error("row {row}, column {col}: expected 0 or 1, found {token:?}")]
    NonBinary {
        row: usize,
        col: usize,
        token: String,
    },
    #[error("diagonal entry ({index},{index}) is nonzero")]
    DiagonalNonzero { index: usize },
    #[error("entry ({row},{col}) is nonzero but lies on or below the diagonal")]
    NotStrictlyUpper { row: usize, col: usize },
    #[error("digraph has a directed cycle through vertices {}", fmt_cycle(.cycle))]
    CyclicDigraph { cycle: Vec<usize> },
    #[error("{what} index {index} out of range 1..={max}")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        max: usize,
    },
    #[error("dimension {n} exceeds the configured limit of {max}")]
    DimensionTooLarge { n: usize, max: usize },
    #[error("operands live in rings of different dimension ({left} vs {right})")]
    DimensionMismatch { left: usize, right: usize },
    #[error("partition has weight {weight}, expected {n}")]
    BadPartition { weight: usize, n: usize },
    #[error("not a permutation of 1..={n}")]
    InvalidPermutation { n: usize },
    #[error("malformed JSON matrix: {0}")]
    Json(String),
}

fn fmt_cycle(cycle: &[usize]) -> String {
    let mut parts: Vec<String> = cycle.iter().map(|v| format!("u{v}")).collect();
    if let Some(first) = cycle.first() {
        parts.push(format!("u{first}"));
    }
    parts.join(" -> ")
}

pub type Result<T> = std::result::Result<T, Error>;
