use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("invalid multi-index {axes:?} for dimension {dim}")]
    InvalidMultiIndex { axes: Vec<usize>, dim: usize },

    #[error("expected {expected} vectors, got {found}")]
    WrongVectorCount { expected: usize, found: usize },

    #[error("map `{label}` is not inverted by its declared inverse")]
    InverseMismatch { label: String },

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("shear on axis {axis} must not depend on that coordinate")]
    InvalidShear { axis: usize },

    #[error("word `{label}` has degree {degree}, exceeding the cap {cap}")]
    DegreeCapExceeded { label: String, degree: u32, cap: u32 },

    #[error("generator `{generator}` does not preserve form `{form}`")]
    NotInvariant { generator: String, form: String },

    #[error("generator list is empty")]
    EmptyGenerators,

    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),

    #[error("form is not closed: {0}")]
    NotClosed(String),

    #[error("form is zero")]
    ZeroForm,

    #[error("form has non-constant coefficients")]
    NonConstantForm,

    #[error("chain is not a cycle")]
    NotACycle,

    #[error("cochain of group degree {expected} evaluated on a {found}-tuple")]
    WrongArity { expected: usize, found: usize },

    #[error("descent depth {depth} is invalid for a {degree}-form")]
    InvalidDepth { depth: usize, degree: usize },

    #[error("cannot push a {dim}-chain forward along the non-affine map `{label}`")]
    NonAffinePushForward { dim: usize, label: String },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
