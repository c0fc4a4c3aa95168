use thiserror::Error;

/// Errors raised by the library. The CLI maps each variant onto an exit code.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum QdlError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("d = {0} is not an odd square-free positive integer")]
    NotOddSquarefree(u64),

    #[error("requested {what} = {requested} exceeds table limit {limit}")]
    TableLimit {
        what: &'static str,
        requested: u64,
        limit: u64,
    },

    #[error("s = {re}+{im}i is within {tol:e} of the pole at s = 1")]
    Pole { re: f64, im: f64, tol: f64 },

    #[error("modulus {modulus} exceeds the exact-route bound {bound}; use the AFE route")]
    ModulusTooLarge { modulus: u64, bound: u64 },

    #[error("work budget exceeded: {ops:e} operations > limit {limit:e} (pass --force to run anyway)")]
    Budget { ops: f64, limit: f64 },

    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    #[error("degenerate schedule: {0}")]
    DegenerateSchedule(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for QdlError {
    fn from(e: std::io::Error) -> Self {
        QdlError::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, QdlError>;
