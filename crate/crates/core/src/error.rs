use alloc::string::String;
use core::fmt;

/// Error type shared by all modules.
///
/// `Input` marks violated preconditions or malformed data; `Numerical` marks
/// a computation that could not reach its requested tolerance (quadrature
/// budget exhausted, self-check residual too large, reduction inconsistent).
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    Input(String),
    Numerical(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn numerical(msg: impl Into<String>) -> Self {
        Error::Numerical(msg.into())
    }

    pub fn is_input(&self) -> bool {
        matches!(self, Error::Input(_))
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Input(m) => write!(f, "input error: {m}"),
            Error::Numerical(m) => write!(f, "numerical failure: {m}"),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
