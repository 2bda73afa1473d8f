use alloc::string::String;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("pole at {0}")]
    Pole(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("no convergence after {levels} levels: best estimate {estimate:e}, error estimate {error:e}")]
    Accuracy { estimate: f64, error: f64, levels: u32 },
    #[error("unknown identity id `{0}`")]
    UnknownId(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("cannot parse `{0}`")]
    Parse(String),
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
