use thiserror::Error;

/// Crate-wide error type. The CLI maps these onto exit codes: usage errors
/// are caught by the argument parser, `Parse`/`InvalidParameter`/
/// `InvalidVertex`/`Disconnected`/`OracleBound` are input/domain errors
/// (exit 2), and `Inconsistency`/`Numeric` signal a broken build (exit 3).
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("vertex {vertex} out of range for graph of order {order}")]
    InvalidVertex { vertex: usize, order: usize },

    #[error("graph is disconnected: components {0:?}")]
    Disconnected(Vec<Vec<usize>>),

    #[error("graph of order {order} exceeds the oracle bound {bound}; refusing to enumerate")]
    OracleBound { order: usize, bound: usize },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("internal consistency failure: {0}")]
    Inconsistency(String),

    #[error("numeric failure: {0}")]
    Numeric(String),
}

pub type Result<T> = std::result::Result<T, Error>;
