use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LabError {
    #[error("input must be positive")]
    ZeroInput,

    #[error("{what} = {value} exceeds the bound {bound}")]
    BoundExceeded {
        what: &'static str,
        value: u128,
        bound: u128,
    },

    #[error("could not allocate {bytes} bytes for {what}")]
    Allocation { what: &'static str, bytes: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("p = {p} is a prime of bad reduction (v_p(discriminant) = {valuation})")]
    BadReduction { p: u64, valuation: u32 },

    #[error("search exhausted: {0}")]
    SearchExhausted(String),

    #[error("quadrature did not converge to {tolerance:e} within {max_depth} subdivisions")]
    Quadrature { tolerance: f64, max_depth: u32 },

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
}

impl LabError {
    pub(crate) fn pre(msg: impl Into<String>) -> Self {
        LabError::Precondition(msg.into())
    }

    /// Errors that reject the input before any work is done.
    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            LabError::ZeroInput
                | LabError::BoundExceeded { .. }
                | LabError::Precondition(_)
                | LabError::NotPrime(_)
                | LabError::BadReduction { .. }
                | LabError::Overflow(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, LabError>;
