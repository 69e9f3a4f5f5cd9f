use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("no steady state: {0}")]
    NoSteadyState(String),
    #[error("operating point is unstable: {0}")]
    Unstable(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Compute(optomech_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::NoSteadyState(_) => 3,
            CliError::Unstable(_) => 4,
            CliError::Io(_) | CliError::Compute(_) => 1,
        }
    }
}

impl From<optomech_core::Error> for CliError {
    fn from(e: optomech_core::Error) -> Self {
        use optomech_core::Error as E;
        match e {
            E::Config(msg) => CliError::Config(msg),
            E::InvalidParameter { .. } | E::NegativePower(_) => CliError::Config(e.to_string()),
            E::NoSteadyState { .. } => CliError::NoSteadyState(e.to_string()),
            other => CliError::Compute(other),
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
