use num_bigint::BigInt;
use thiserror::Error;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("indeterminate point: factor {factor} (counted right to left) cannot be evaluated{}", step.map(|s| format!(" at orbit step {s}")).unwrap_or_default())]
    IndeterminatePoint { factor: usize, step: Option<usize> },

    #[error("period modulo {0} exceeds the step cap")]
    StepCapExceeded(u64),

    #[error("no certifying modulus in {lo}..{hi}")]
    NotFound { lo: u64, hi: u64 },

    #[error("lcm of periods {lcm} did not exceed target {target}")]
    TargetNotReached { lcm: BigInt, target: BigInt },

    #[error("tail bound does not converge at the bracket lower end")]
    TailNotConvergent,

    #[error("invalid bracket: {0}")]
    BracketInvalid(String),

    #[error("no recurrence onset found")]
    NoOnsetFound,

    #[error("inconsistent input: {0}")]
    Inconsistent(String),

    #[error("polynomial has no real root")]
    NoRealRoot,

    #[error("margin not certifiable: {0}")]
    MarginNotCertifiable(String),

    #[error("degenerate pair (v #{v}, w #{w}): projection vanishes")]
    DegeneratePair { v: usize, w: usize },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),

    #[error("precision budget exhausted: {0}")]
    PrecisionExhausted(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}
