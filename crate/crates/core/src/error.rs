use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{what} index {index} out of range (expected 0..=3)")]
    IndexOutOfRange { what: &'static str, index: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A bilinear set that is supposed to come from a single spinor does not
    /// satisfy the Fierz identities.
    #[error("Fierz identity `{identity}` violated: residual {residual:.3e} > {tol:.1e}")]
    FierzViolation {
        identity: &'static str,
        residual: f64,
        tol: f64,
    },

    #[error("division by zero: {0}")]
    DivisionByZero(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("convention check failed: {0}")]
    Conventions(String),
}

pub type Result<T> = std::result::Result<T, Error>;
