use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("graph is disconnected: no path between {0} and {1}")]
    DisconnectedGraph(usize, usize),
    #[error("query budget of {budget} distinct pairs exhausted")]
    BudgetExceeded { budget: u64 },
    #[error("{what}: size {size} exceeds the cap of {cap}")]
    TooLarge {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("multigraph is not Eulerian: {0}")]
    NotEulerian(String),
    #[error("promise violated: {0}")]
    PromiseViolated(String),
    #[error("precondition unmet: {0}")]
    PreconditionUnmet(String),
    #[error("tree is not a minimum spanning tree: pair ({0}, {1}) undercuts its tree path")]
    NotAnMst(usize, usize),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("vertex {0} out of range")]
    OutOfRange(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
