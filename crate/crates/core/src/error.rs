use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("graph invariant violated: {0}")]
    Invariant(String),

    #[error("graph is disconnected: vertex {unreachable} is unreachable from vertex 0")]
    Disconnected { unreachable: usize },

    #[error("graph is not regular: deg({u}) = {deg_u} but deg({v}) = {deg_v}")]
    NotRegular {
        u: usize,
        deg_u: usize,
        v: usize,
        deg_v: usize,
    },

    #[error("generator {generator} does not preserve the set: point {point} maps to {image} outside it")]
    NotInvariant {
        generator: usize,
        point: usize,
        image: usize,
    },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("hypothesis not satisfied ({clause}): {detail}")]
    Hypothesis { clause: String, detail: String },

    /// An identity that the theory guarantees did not hold on a concrete
    /// instance. Never repaired, always surfaced.
    #[error("theorem violation ({clause}): {detail}")]
    TheoremViolation { clause: String, detail: String },

    #[error("{what} exceeds the supported size ({size} > {cap})")]
    Scale { what: String, size: u128, cap: u128 },

    #[error("not applicable: {0}")]
    Applicability(String),

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
}

impl Error {
    pub(crate) fn violation(clause: &str, detail: impl Into<String>) -> Self {
        Error::TheoremViolation {
            clause: clause.to_string(),
            detail: detail.into(),
        }
    }

    pub(crate) fn hypothesis(clause: &str, detail: impl Into<String>) -> Self {
        Error::Hypothesis {
            clause: clause.to_string(),
            detail: detail.into(),
        }
    }

    pub fn is_violation(&self) -> bool {
        matches!(self, Error::TheoremViolation { .. })
    }
}
