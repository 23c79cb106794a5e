use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A word enumeration would exceed the configured budget.
    #[error("enumeration budget exceeded: s^n = {requested} words, budget {budget}")]
    Budget { requested: u128, budget: u64 },

    /// Construction-time rejection of malformed domain data
    /// (bad alphabet size, table length, branch parameters, grids).
    #[error("invalid input: {0}")]
    Invalid(String),

    /// An iterated function system failed geometric validation.
    #[error("system validation failed: {0}")]
    Validation(String),

    /// A point lies in a gap of the attractor cover; carries the
    /// flanking cylinder endpoints at the depth where coding stopped.
    #[error("gap point: x = {x} not covered at depth {depth} (flanked by {left}, {right})")]
    GapPoint {
        x: f64,
        depth: usize,
        left: f64,
        right: f64,
    },

    /// A numerical routine failed to reach its contract
    /// (root bracketing, eigen iteration, non-finite values).
    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub fn numerical(msg: impl Into<String>) -> Self {
        Error::Numerical(msg.into())
    }
}
