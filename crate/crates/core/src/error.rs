use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgebraError {
    #[error("point {0} lies outside [0, 1]")]
    Domain(String),
    #[error("empty interval: {0}")]
    EmptyInterval(String),
    #[error("invalid function: {0}")]
    InvalidFunction(String),
    #[error("function is not normal (supremum {0})")]
    NotNormal(String),
    #[error("{role} is not normal and convex")]
    NotInL { role: &'static str },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },
    #[error("parse error: {0}")]
    Parse(String),
}

impl AlgebraError {
    pub(crate) fn domain(x: &Rational) -> Self {
        AlgebraError::Domain(crate::rational::fmt(x))
    }
}

pub type Result<T, E = AlgebraError> = std::result::Result<T, E>;
