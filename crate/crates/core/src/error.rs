use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("q must lie strictly inside (0, 1), got {0}")]
    InvalidQ(f64),

    #[error("{op}: outside the domain ({reason})")]
    Domain { op: &'static str, reason: String },

    /// The requested point sits on (or within the guard distance of) a pole.
    #[error("{op}: pole at {location} ({detail})")]
    Pole {
        op: &'static str,
        location: Complex64,
        detail: String,
    },

    #[error("{op}: base {base} lies on the branch cut of the principal logarithm")]
    Branch { op: &'static str, base: Complex64 },

    #[error("{op}: singular term ({detail})")]
    Singular { op: &'static str, detail: String },

    #[error("{what}: index {index} exceeds the configured capacity {limit}")]
    Capacity {
        what: &'static str,
        index: usize,
        limit: usize,
    },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("{op}: no convergence after {terms} terms (tail bound {bound:e})")]
    Convergence {
        op: &'static str,
        terms: usize,
        bound: f64,
    },

    #[error("degenerate parameters: {0}")]
    Degenerate(String),
}

impl Error {
    pub(crate) fn domain(op: &'static str, reason: impl Into<String>) -> Self {
        Error::Domain {
            op,
            reason: reason.into(),
        }
    }

    pub(crate) fn pole(op: &'static str, location: Complex64, detail: impl Into<String>) -> Self {
        Error::Pole {
            op,
            location,
            detail: detail.into(),
        }
    }

    pub fn is_pole(&self) -> bool {
        matches!(self, Error::Pole { .. })
    }
}
