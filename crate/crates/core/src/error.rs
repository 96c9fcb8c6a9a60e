use thiserror::Error;

use crate::mu::SingularEvaluation;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("element is not of degree zero")]
    NotDegreeZero,
    #[error("not expressible in X, Z, Z*: stuck at {0}")]
    NotExpressible(String),
    #[error("syntax error at line {line}, column {column}: {msg}")]
    Syntax {
        line: usize,
        column: usize,
        msg: String,
    },
    #[error("unknown token {token:?} at line {line}, column {column}")]
    UnknownToken {
        line: usize,
        column: usize,
        token: String,
    },
    #[error("negative power of a non-invertible element")]
    NegativePower,
    #[error("singular evaluation: {0}")]
    Singular(#[from] SingularEvaluation),
    #[error("quadrature result {0} is not within 0.1 of an integer")]
    GridTooCoarse(f64),
    #[error("invalid document: {0}")]
    InvalidDocument(String),
}
