use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    #[error("syntax error at column {col}: {msg}")]
    Syntax { col: usize, msg: String },
    #[error("arity error: {0}")]
    Arity(String),
    /// The polynomial argument uses something other than x-variables.
    #[error("not a polynomial: {0}")]
    NotPolynomial(String),
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("{0}")]
    Domain(#[from] jac_core::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    /// 2 for malformed input, 3 for well-formed input outside the domain.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Syntax { .. } | CliError::Arity(_) | CliError::NotPolynomial(_) => 2,
            CliError::Usage(_) => 2,
            CliError::NotInvertible(_) | CliError::Domain(_) => 3,
        }
    }
}
