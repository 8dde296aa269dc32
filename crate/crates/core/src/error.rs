use std::fmt;

use thiserror::Error;

use crate::gmetric::Axiom;
use crate::space::MetricAxiom;

/// A tuple of point labels that demonstrates a failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness(pub Vec<String>);

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("space has no points")]
    EmptySpace,

    #[error("duplicate point label `{0}`")]
    DuplicateLabel(String),

    #[error("unknown point `{0}`")]
    UnknownPoint(String),

    #[error("expected {expected} entries, found {found}")]
    ShapeMismatch { expected: usize, found: usize },

    #[error("entry {value} at {witness} is negative or not finite")]
    InvalidValue { value: f64, witness: Witness },

    #[error("axiom {axiom} violated at {witness}")]
    AxiomViolation { axiom: Axiom, witness: Witness },

    #[error("metric axiom {axiom} violated at {witness}")]
    MetricViolation { axiom: MetricAxiom, witness: Witness },

    #[error("point `{label}` has dimension {found}, expected {expected}")]
    DimensionMismatch {
        label: String,
        expected: usize,
        found: usize,
    },

    #[error("points `{0}` and `{1}` coincide")]
    CoincidentPoints(String, String),

    #[error("at least {required} points are required, found {found}")]
    TooFewPoints { required: usize, found: usize },

    #[error("invalid coefficients: {0}")]
    InvalidCoefficients(String),

    #[error("constant {value} is outside the admissible range {range}")]
    ConstantOutOfRange { value: f64, range: &'static str },

    #[error("map is not total: {0}")]
    MapNotTotal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
