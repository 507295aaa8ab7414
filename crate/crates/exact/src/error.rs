use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("substitution makes a denominator vanish")]
    ZeroDenominator,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("too many variables: {0} (limit {limit})", limit = crate::poly::MAX_VARS)]
    TooManyVariables(usize),
    #[error("operands use different variable lists")]
    VarSetMismatch,
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}
