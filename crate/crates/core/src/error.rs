use thiserror::Error;

pub type Result<T> = std::result::Result<T, TriqError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TriqError {
    #[error("invalid coupling configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {residual:e})")]
    NoConvergence { sweeps: usize, residual: f64 },

    #[error("outside the closed-form domain: {0}")]
    AnalyticDomain(String),

    #[error("j = {j} is within 1e-9 of the branch threshold {threshold}")]
    BranchAmbiguity { j: f64, threshold: f64 },

    #[error("closed forms exist only for omega = 0.8 and omega = 1.2, got {0}")]
    UnsupportedBranch(f64),

    #[error("invalid sweep specification: {0}")]
    InvalidSweep(String),

    #[error("{0}")]
    Usage(String),
}

impl TriqError {
    /// Errors that mean "use the numeric path instead".
    pub fn is_analytic_miss(&self) -> bool {
        matches!(
            self,
            TriqError::AnalyticDomain(_)
                | TriqError::BranchAmbiguity { .. }
                | TriqError::UnsupportedBranch(_)
        )
    }
}
