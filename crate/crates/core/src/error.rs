use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Bad user input: group parameters, grids, polynomial specs.
    #[error("invalid input: {0}")]
    Invalid(String),

    /// An enumeration or table would exceed the configured work budget.
    #[error("budget exceeded: {what} needs about {needed:.3e} units, budget is {budget:.3e}")]
    Budget {
        what: &'static str,
        needed: f64,
        budget: f64,
    },

    /// Exact integer arithmetic left the range of the fixed-width accumulator.
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    /// A numerical routine was asked for accuracy it cannot deliver.
    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Serde(#[from] serde_json::Error),

    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}
