use thiserror::Error;

use crate::quadrature::QuadratureResult;

/// Errors produced by the numerical routines and the CLI layer.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("lattice generator is zero")]
    ZeroGenerator,
    #[error("lattice generators are linearly dependent over the reals (Im(w2/w1) = {ratio_im:e})")]
    DegenerateLattice { ratio_im: f64 },
    #[error("point lies on the lattice")]
    PointOnLattice,
    #[error("integrand evaluated at a pole")]
    PoleHit,
    #[error("integration domain passes within {distance:e} of the pole")]
    PoleNearDomain { distance: f64 },
    #[error("quadrature did not converge (best value {}, err {:e})", best.value, best.err)]
    NoConvergence { best: QuadratureResult },
    #[error("integrand shows no decay at the sampled radii")]
    TailEstimateFailed,
    #[error("decay order {order} is not supported here")]
    UnsupportedDecay { order: f64 },
    #[error("series needs more than {terms} terms")]
    SlowConvergence { terms: u64 },
    #[error("outside the domain: {0}")]
    DomainError(String),
    #[error("brute-force sum over {points} points exceeds the budget")]
    BudgetExceeded { points: u64 },
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn code(&self) -> &'static str {
        match self {
            Error::ZeroGenerator => "ZeroGenerator",
            Error::DegenerateLattice { .. } => "DegenerateLattice",
            Error::PointOnLattice => "PointOnLattice",
            Error::PoleHit => "PoleHit",
            Error::PoleNearDomain { .. } => "PoleNearDomain",
            Error::NoConvergence { .. } => "NoConvergence",
            Error::TailEstimateFailed => "TailEstimateFailed",
            Error::UnsupportedDecay { .. } => "UnsupportedDecay",
            Error::SlowConvergence { .. } => "SlowConvergence",
            Error::DomainError(_) => "DomainError",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
            Error::NonFinite(_) => "NonFinite",
            Error::InvalidArgument(_) => "InvalidArgument",
        }
    }

    /// True for failures of an iterative method, as opposed to bad input.
    pub fn is_convergence_failure(&self) -> bool {
        matches!(
            self,
            Error::NoConvergence { .. }
                | Error::TailEstimateFailed
                | Error::SlowConvergence { .. }
                | Error::BudgetExceeded { .. }
                | Error::NonFinite(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
