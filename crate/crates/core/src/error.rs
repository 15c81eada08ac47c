use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("degree {0} is outside the supported range 1..={1}")]
    BadDegree(usize, usize),
    #[error("point {point} is outside 1..={degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("not injective: points {0} and {1} share an image")]
    NotInjective(usize, usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("capacity exceeded: {what} exceeds the bound {bound}")]
    Capacity { what: String, bound: usize },
    #[error("mixed element kinds in one monoid")]
    KindMismatch,
    #[error("element not in monoid: {0}")]
    NotMember(String),
    #[error("J-class {jclass} is not covered by the units: J-class {above} lies strictly above it")]
    NotCovered { jclass: usize, above: usize },
    #[error("J-class {0} is not regular")]
    NotRegular(usize),
    #[error("incomplete classification: {0}")]
    Incomplete(String),
    #[error("hypothesis of the part lemma fails: {reason}; counterexample {counterexample:?}")]
    PartsRejected { reason: String, counterexample: Vec<usize> },
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
