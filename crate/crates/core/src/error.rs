use std::any::Any;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// A zero divisor met while computing modulo a squarefree polynomial.
///
/// Carries the id of the extension whose modulus must be split and the
/// nontrivial monic factor found by the gcd. The factor is type-erased because
/// extensions nest and only the driver that owns `ext_id` knows its type.
#[derive(Clone)]
pub struct Split {
    pub ext_id: u64,
    pub(crate) factor: Arc<dyn Any + Send + Sync>,
}

impl fmt::Debug for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Split").field("ext_id", &self.ext_id).finish_non_exhaustive()
    }
}

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("structural error: {0}")]
    Structural(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("the Jacobian ideal is not zero-dimensional: the critical locus of f is not isolated")]
    NonIsolated,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("enumeration of {needed} jets exceeds the budget of {budget}")]
    Budget { needed: u128, budget: u64 },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error("unhandled split of dynamic extension #{}", .0.ext_id)]
    Split(Split),
}

impl Error {
    /// True for errors caused by the input rather than by a bug.
    pub fn is_user_error(&self) -> bool {
        !matches!(self, Error::Internal(_) | Error::Split(_))
    }

    /// Stable machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Structural(_) => "structural",
            Error::Degenerate(_) => "degenerate",
            Error::NonIsolated => "non_isolated",
            Error::Precondition(_) => "precondition",
            Error::Budget { .. } => "budget",
            Error::Parse { .. } => "parse",
            Error::Internal(_) => "internal",
            Error::Split(_) => "split",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
