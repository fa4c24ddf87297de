use std::io;

use thiserror::Error;

/// A malformed instance file. `line` is 1-based; problems detected only
/// at end of input point at the last line.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EngineError {
    #[error("invalid GA parameters: {0}")]
    InvalidParams(String),
    #[error("selection scheme {scheme} requires integer fitness, but problem `{problem}` is real-valued")]
    SchemeNotApplicable { scheme: String, problem: String },
    #[error("population is empty")]
    EmptyPopulation,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StatsError {
    #[error("cannot summarize an empty sample")]
    EmptySample,
    #[error("scaling fit needs at least 3 points, got {0}")]
    TooFewPoints(usize),
    #[error("scaling fit needs positive values, got ({0}, {1})")]
    NonPositive(f64, f64),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiversityError {
    #[error("genome lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),
}

/// Top-level error for the experiment harness and the command line.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("{path}: {source}")]
    Parse {
        path: String,
        #[source]
        source: ParseError,
    },
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Stats(#[from] StatsError),
    #[error("{0}")]
    Argument(String),
    #[error("run failed for scheme {scheme}, replication {replication}: {source}")]
    Run {
        scheme: String,
        replication: usize,
        #[source]
        source: EngineError,
    },
}
