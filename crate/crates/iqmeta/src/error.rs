//! Error type shared across the crate.

use thiserror::Error;

/// Errors reported by dataset validation, estimators, and the simulation engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("a meta-analysis needs at least 2 studies, got {0} (k < 2)")]
    TooFewStudies(usize),
    #[error("study {index}: sample size must be at least 2, got {size}")]
    StudySizeTooSmall { index: usize, size: u32 },
    #[error("study {index}: var_effect (squared standard error) must be positive, got {value}")]
    NonPositiveVarEffect { index: usize, value: f64 },
    #[error("study {index}: effect must be finite")]
    NonFiniteEffect { index: usize },
    #[error("got {labels} labels for {studies} studies")]
    LabelCountMismatch { labels: usize, studies: usize },
    #[error("duplicate study label {0:?}")]
    DuplicateLabel(String),

    #[error("a raw dataset needs at least 2 groups, got {0}")]
    TooFewGroups(usize),
    #[error("group {index}: needs at least 2 observations, got {count}")]
    GroupTooSmall { index: usize, count: usize },
    #[error("group {index}: observations must be finite")]
    NonFiniteObservation { index: usize },

    #[error("grand mean must be finite")]
    NonFiniteGrandMean,
    #[error("between-study variance must be finite and non-negative, got {0}")]
    InvalidBetweenVar(f64),
    #[error("error variance must be finite and positive, got {0}")]
    InvalidErrorVar(f64),

    #[error("alpha must lie strictly between 0 and 1, got {0}")]
    InvalidAlpha(f64),
    #[error("probability must lie strictly between 0 and 1, got {0}")]
    InvalidProbability(f64),
    #[error("degrees of freedom must be finite and positive, got {0}")]
    InvalidDegreesOfFreedom(f64),
    #[error("variance must be finite and non-negative, got {0}")]
    InvalidVariance(f64),
    #[error("mean must be finite, got {0}")]
    NonFiniteMean(f64),
    #[error("tolerance must be finite and positive, got {0}")]
    InvalidTolerance(f64),
    #[error("iteration cap must be at least 1")]
    ZeroIterationCap,

    /// The quantile root finder exhausted its iteration budget. This signals
    /// an implementation fault, not bad user input.
    #[error("F quantile solver did not converge for p={prob}, df=({df1}, {df2})")]
    QuantileNoConvergence { prob: f64, df1: f64, df2: f64 },

    #[error("simulation config: {0}")]
    InvalidSimulationConfig(String),
}

impl Error {
    /// True for faults in the numerical machinery itself, as opposed to
    /// invalid input. The CLI maps these to a distinct exit code.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::QuantileNoConvergence { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
