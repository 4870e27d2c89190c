use changemaker_core::Error;

/// Process exit codes.
pub mod exit {
    pub const SUCCESS: u8 = 0;
    pub const NONEXISTENCE: u8 = 2;
    pub const NOT_FOUND: u8 = 3;
    pub const FAIL: u8 = 4;
    pub const PARSE: u8 = 64;
    pub const CAPACITY: u8 = 65;
    pub const INTERNAL: u8 = 70;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => exit::PARSE,
            CliError::Core(e) => match e {
                Error::Parse(_) | Error::ReduceFirst(_) => exit::PARSE,
                Error::Capacity { .. } | Error::Overflow => exit::CAPACITY,
                Error::Domain(_) | Error::NotLSpaceForm { .. } => exit::NONEXISTENCE,
                Error::Internal(_) => exit::INTERNAL,
            },
        }
    }
}
