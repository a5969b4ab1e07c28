// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Operands live in different real quadratic fields.
    #[error("incompatible radicands: sqrt({left}) and sqrt({right})")]
    IncompatibleFields { left: String, right: String },

    #[error("division by zero")]
    DivisionByZero,

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("index {index} out of range for {len} points")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("no strictly dominant eigenvalue: {0}")]
    NoStrictDominance(String),

    #[error("seed has zero component along the dominant eigenvector")]
    ZeroDominantComponent,

    #[error("not a line pencil: reduction ended at {0}")]
    NotALinePencil(String),

    #[error("certificate refused: {check}: {detail}")]
    Refused { check: String, detail: String },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
