use std::fmt;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Which family inequality a parameter triple violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamViolation {
    NegativeE,
    NegativeT,
    /// b_l > −2 fails.
    BTooSmall,
    /// b_l < 2e+4+t fails.
    BTooLarge,
    /// b > e−1 fails: B = C0 + (b+1)f would not be ample.
    NotAmple,
}

impl ParamViolation {
    /// The inequality that was required, in the family's own notation.
    pub fn inequality(self) -> &'static str {
        match self {
            ParamViolation::NegativeE => "e ≥ 0",
            ParamViolation::NegativeT => "t ≥ 0 (b_m = 3e+6+t ≥ 3e+6)",
            ParamViolation::BTooSmall => "b_l > −2",
            ParamViolation::BTooLarge => "b_l < 2e+4+t",
            ParamViolation::NotAmple => "b > e−1 (ampleness consequence violated)",
        }
    }
}

impl fmt::Display for ParamViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "requires {}", self.inequality())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arithmetic overflow in exact integer computation")]
    Overflow,

    #[error("invalid parameters: {violation} (got {detail})")]
    InvalidParams {
        violation: ParamViolation,
        detail: String,
    },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("not a zero-cycle: class has nonzero coefficients below degree 3")]
    NotZeroCycle,

    #[error("hypotheses not satisfied: {}", failing.join(", "))]
    HypothesesNotSatisfied { failing: Vec<&'static str> },

    #[error("extension may be non-split: h^1(A−B) = {0} ≠ 0")]
    NotSplit(String),

    #[error("internal consistency failure [{identity}]: {detail}")]
    Inconsistency {
        identity: &'static str,
        detail: String,
    },
}

impl Error {
    /// Process exit code for the CLI contract: 1 bad input, 2 hypotheses, 3 consistency.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Overflow | Error::InvalidParams { .. } | Error::InvalidInput(_) => 1,
            Error::HypothesesNotSatisfied { .. } | Error::NotSplit(_) => 2,
            Error::NotZeroCycle | Error::Inconsistency { .. } => 3,
        }
    }

    pub(crate) fn inconsistent(identity: &'static str, detail: impl Into<String>) -> Self {
        Error::Inconsistency {
            identity,
            detail: detail.into(),
        }
    }
}

/// Fails with [`Error::Inconsistency`] unless both routes agree.
pub(crate) fn ensure_eq<T: PartialEq + fmt::Debug>(
    identity: &'static str,
    lhs: T,
    rhs: T,
) -> Result<()> {
    if lhs == rhs {
        Ok(())
    } else {
        Err(Error::inconsistent(identity, format!("{lhs:?} ≠ {rhs:?}")))
    }
}
