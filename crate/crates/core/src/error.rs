use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (asymmetry {asymmetry:e})")]
    NotHermitian { asymmetry: f64 },

    #[error("Hermitian eigensolver did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("matrix is numerically singular (rcond {rcond:e})")]
    Singular { rcond: f64 },

    #[error("effective channel is numerically singular (rcond {rcond:e})")]
    SingularEffectiveChannel { rcond: f64 },

    #[error("index {index} out of range (size {size})")]
    IndexOutOfRange { index: u64, size: u64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("budget exceeded: {what} needs {needed}, cap is {cap}")]
    BudgetExceeded {
        what: &'static str,
        needed: u64,
        cap: u64,
    },

    #[error("trial {trial} stayed degenerate after {redraws} redraws")]
    DegenerateRun { trial: u64, redraws: u32 },
}

impl Error {
    /// Errors that come from an unlucky channel draw rather than a bad
    /// request. The harness answers these by redrawing the trial.
    pub fn is_redraw_signal(&self) -> bool {
        matches!(
            self,
            Error::Singular { .. }
                | Error::SingularEffectiveChannel { .. }
                | Error::NoConvergence { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
