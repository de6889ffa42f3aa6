use thiserror::Error;

use crate::field::FieldError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("cannot truncate order {source_order} to larger order {target}")]
    TruncationOrder { source_order: usize, target: usize },
    #[error("scaling polynomial must vanish at t = 0")]
    ScalingConstantTerm,
    #[error("constant term is not 1-regular")]
    NotOneRegular,
    #[error("element does not commute with A (residual at order {stage})")]
    NotInCommutant { stage: usize },
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("point is not on the jet scheme (generator {index} is nonzero)")]
    NotOnScheme { index: usize },
    #[error("no commuting completion found after {attempts} attempts")]
    ResampleExhausted { attempts: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("pair does not commute")]
    NonCommuting,
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Field(#[from] FieldError),
}

pub type Result<T> = std::result::Result<T, Error>;
