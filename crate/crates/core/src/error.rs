use thiserror::Error;

use crate::lexicon::ValidationReport;

#[derive(Debug, Error)]
pub enum Error {
    #[error("token is empty after normalization")]
    EmptyToken,
    #[error("token {0:?} contains whitespace")]
    WhitespaceInToken(String),
    #[error("syntax error on line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("duplicate entry for {0:?}")]
    DuplicateEntry(String),
    #[error(
        "invalid dictionary: {} undefined definientes, {} empty definitions",
        .0.missing_words.len(),
        .0.empty_definitions.len()
    )]
    Invalid(Box<ValidationReport>),
    #[error("unknown word {0:?}")]
    UnknownWord(String),
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(usize),
    #[error("percentage {0} is outside 0..=100")]
    InvalidPercent(u32),
    #[error("graph has {size} vertices, limit is {limit}")]
    TooLarge { size: usize, limit: usize },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
