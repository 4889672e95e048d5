use std::fmt;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Pipeline stage that produced an error, see [`Error::Stage`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Eigenstate,
    MomentumProfile,
    PositionEntropy,
    MomentumEntropy,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Stage::Eigenstate => "eigenstate",
            Stage::MomentumProfile => "momentum profile",
            Stage::PositionEntropy => "position entropy",
            Stage::MomentumEntropy => "momentum entropy",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Argument outside the domain of a mathematical function.
    #[error("domain error in {function}: {reason}")]
    Domain {
        function: &'static str,
        reason: String,
    },

    /// A physical or numerical parameter failed validation.
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    /// An integrand returned NaN or an infinity.
    #[error("integrand is not finite at x = {x}")]
    NonFinite { x: f64 },

    /// An iterative procedure ran out of budget. `estimate` is the best value
    /// reached.
    #[error("{what} did not converge: best estimate {estimate:e} (error estimate {error:e})")]
    Convergence {
        what: &'static str,
        estimate: f64,
        error: f64,
    },

    #[error("{stage} stage failed: {source}")]
    Stage {
        stage: Stage,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn domain(function: &'static str, reason: impl Into<String>) -> Self {
        Error::Domain {
            function,
            reason: reason.into(),
        }
    }

    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    pub(crate) fn at(self, stage: Stage) -> Self {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }

    /// The innermost error, with stage wrappers removed.
    pub fn root(&self) -> &Error {
        match self {
            Error::Stage { source, .. } => source.root(),
            other => other,
        }
    }

    /// True when the failure was a convergence failure rather than bad input.
    pub fn is_convergence(&self) -> bool {
        matches!(self.root(), Error::Convergence { .. } | Error::NonFinite { .. })
    }
}
