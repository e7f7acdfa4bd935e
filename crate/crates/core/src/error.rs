use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division is not exact; remainder {remainder}")]
    Division { remainder: String },
    #[error("series base must have constant term 1, found {0}")]
    SeriesBase(String),
    #[error("pole at factor {0}")]
    Pole(String),
    #[error("index {index} out of range 1..={max}")]
    Index { index: usize, max: usize },
    #[error("scale limit exceeded: {0}")]
    Scale(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error("quotient is not finite-dimensional: {0}")]
    Finiteness(String),
    #[error("model error: {0}")]
    Model(String),
    #[error("character did not terminate below degree {0}")]
    Cutoff(usize),
    #[error("consistency error: {0}")]
    Consistency(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("grading error: {0}")]
    Grading(String),
    #[error("formula error: {0}")]
    Formula(String),
    #[error("data is not cyclotomic: {0}")]
    NotCyclotomic(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
