use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum KernelError {
    #[error("mixed base fields: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("towers have different bases: {0}")]
    BaseMismatch(String),
    #[error("map is not semilinear: sigma(x*a) != sigma(a)*x at {0}")]
    SemilinearityViolation(String),
    #[error("degree sequence increases at step {step}: d_{step} = {prev} < d_{next} = {cur}", next = step + 1)]
    MonotonicityViolation { step: usize, prev: u64, cur: u64 },
    #[error("minimal polynomial is inseparable: {0}")]
    InseparableMinimalPolynomial(String),
    #[error("{0}")]
    Unsupported(String),
    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, KernelError>;
