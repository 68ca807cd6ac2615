use thiserror::Error;

/// Errors raised by parsing, construction, and the analyses in this crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },

    #[error("line {line}: dangling id {id}")]
    DanglingId { line: usize, id: String },

    #[error("not validated: {0}")]
    NotValidated(String),

    #[error("malformed sharp-angle set at node {node}: {missing} angles absent (expected 2)")]
    MalformedSharpAngles { node: usize, missing: usize },

    #[error("malformed planification: {0}")]
    MalformedPlanification(String),

    #[error("{what} {index} out of range (limit {limit})")]
    OutOfRange {
        what: &'static str,
        index: usize,
        limit: usize,
    },

    #[error("n = {n} exceeds the exhaustive limit {max}; use lower bounds")]
    TooLarge { n: usize, max: usize },

    #[error("malformed script: {0}")]
    MalformedScript(String),

    #[error("malformed sequence: {0}")]
    MalformedSequence(String),

    #[error("no witness gap")]
    NoWitnessGap,

    #[error("cut has an empty side")]
    EmptySide,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("seed drawing {0} is not strict")]
    NonStrictSeed(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
