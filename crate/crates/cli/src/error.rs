use std::fmt;

use ovk_core::Error;

/// Exit code 2 is reserved for bad input and unsupported requests, exit
/// code 1 for computations or checks that ran and failed.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Usage(_) => 2,
            Self::Failure(_) => 1,
        }
    }

    pub fn usage(msg: impl Into<String>) -> Self {
        Self::Usage(msg.into())
    }

    pub fn failure(msg: impl Into<String>) -> Self {
        Self::Failure(msg.into())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Usage(m) | Self::Failure(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidKey(_) | Error::UnsupportedRegime(_) | Error::Parse(_) => {
                Self::Usage(e.to_string())
            }
            _ => Self::Failure(e.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
