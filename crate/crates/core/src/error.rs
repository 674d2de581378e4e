use thiserror::Error;

use crate::algebra::Shape;

/// Errors raised by the exact-arithmetic kernel and the constructions built on it.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid matrix shape {m}x{n}: need m >= n >= 1")]
    InvalidShape { m: usize, n: usize },

    #[error("shape mismatch: {left} vs {right}")]
    ShapeMismatch { left: Shape, right: Shape },

    #[error("variable {0} is outside the declared shape")]
    VariableOutOfRange(String),

    #[error("no assignment given for x[{0},{1}]")]
    MissingAssignment(usize, usize),

    #[error("image of x[{0},{1}] is not a linear form in the x-variables")]
    NotLinear(usize, usize),

    #[error("polynomial is not homogeneous")]
    NotHomogeneous,

    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(u32, u32),

    #[error("polynomial involves Rees variables T[k] where only x-variables are allowed")]
    ReesVariable,

    #[error("index sets have incompatible sizes: {0}")]
    SizeMismatch(String),

    #[error("index {index} out of range 1..={bound}")]
    IndexOutOfRange { index: usize, bound: usize },

    #[error("weight {0:?} is not dominant")]
    NotDominant(Vec<i64>),

    #[error("partition part {part} exceeds the column count {n}")]
    PartTooLarge { part: usize, n: usize },

    #[error("{0}")]
    Infeasible(String),

    #[error("division left a nonzero remainder")]
    InexactDivision,

    #[error("matrix is singular")]
    Singular,

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
