use thiserror::Error;

use crate::fincat::ObjId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A hom-set (or fiber) is larger than the configured enumeration cap.
    /// Never treated as a negative answer.
    #[error("search budget exceeded: {what} has {size} candidates, budget is {budget}")]
    SearchBudgetExceeded {
        what: String,
        size: String,
        budget: u64,
    },

    #[error("missing capability: {0}")]
    MissingCapability(String),

    #[error("object mismatch: expected {expected}, found {found}")]
    ObjectMismatch { expected: String, found: String },

    #[error("arrows are not composable: {0}")]
    NotComposable(String),

    #[error("no mediating arrow for {0}")]
    NoMediatingArrow(String),

    #[error("mediating arrow for {0} is not unique")]
    NonUniqueMediatingArrow(String),

    #[error("invalid arrow: {0}")]
    InvalidArrow(String),

    #[error("unknown object `{0}`")]
    UnknownObject(String),

    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),

    #[error("no point 1 -> {0:?} although the object is not initial")]
    MissingPoint(ObjId),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("invalid predicate: {0}")]
    InvalidPredicate(String),

    /// A structural law (category law, chosen-structure universal property,
    /// doctrine law) fails on loaded data.
    #[error("law `{law}` violated: {detail}")]
    LawViolation { law: String, detail: String },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn budget(what: impl Into<String>, size: impl ToString, budget: u64) -> Self {
        Error::SearchBudgetExceeded {
            what: what.into(),
            size: size.to_string(),
            budget,
        }
    }

    pub fn missing(cap: impl Into<String>) -> Self {
        Error::MissingCapability(cap.into())
    }

    pub fn law(law: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::LawViolation {
            law: law.into(),
            detail: detail.into(),
        }
    }

    pub fn is_budget(&self) -> bool {
        matches!(self, Error::SearchBudgetExceeded { .. })
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
