//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CoreError {
    #[error("unknown species identifier `{0}`")]
    UnknownSpecies(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("spatial grid cannot represent the requested state: {0}")]
    GridTooSmall(String),

    #[error("time step too large: dt*max(V0, E_K)/hbar = {0:.3} >= 0.1")]
    StepTooLarge(f64),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("point ({0:.6e}, {1:.6e}) lies outside the stored intensity map")]
    OutOfGrid(f64, f64),

    #[error("fit did not converge: {0}")]
    NonConvergence(String),
}

impl CoreError {
    /// Exit-status class used by the command-line front end.
    pub fn status_code(&self) -> i32 {
        match self {
            CoreError::UnknownSpecies(_)
            | CoreError::InvalidParameter(_)
            | CoreError::Precondition(_)
            | CoreError::GridTooSmall(_)
            | CoreError::OutOfGrid(_, _) => 3,
            CoreError::StepTooLarge(_)
            | CoreError::Numerical(_)
            | CoreError::NonConvergence(_) => 4,
        }
    }
}
