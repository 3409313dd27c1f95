use thiserror::Error;

use crate::coeffring::CoeffError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{what} = {value} exceeds the bound {bound}")]
    BoundExceeded {
        what: &'static str,
        value: usize,
        bound: usize,
    },
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("invalid partition {0:?}: parts must be positive and weakly decreasing")]
    InvalidPartition(Vec<usize>),
    #[error("invalid step {found:?} at position {position}; expected one of n, d, e")]
    InvalidStep { found: char, position: usize },
    #[error("path goes below the diagonal at step {0}")]
    BelowDiagonal(usize),
    #[error("diagonal step on the main diagonal at step {0}")]
    DiagonalOnMainDiagonal(usize),
    #[error("path does not end on the diagonal")]
    NotClosed,
    #[error("point ({0}, {1}) is not on the path")]
    PointNotOnPath(usize, usize),
    #[error("bounce start ({0}, {0}) lies on the diagonal")]
    StartOnDiagonal(usize),
    #[error("path contains a diagonal step")]
    HasDiagonal,
    #[error("invalid coloring: {0}")]
    InvalidColoring(String),
    #[error("recursion depth exceeded while evaluating {0}")]
    NonTermination(String),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}

pub type Result<T> = std::result::Result<T, Error>;
