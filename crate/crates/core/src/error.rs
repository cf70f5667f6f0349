use thiserror::Error;

/// Errors raised by the extrafunction calculus.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("syntax error at byte {offset}: expected one of {}", expected.join(", "))]
    Syntax { offset: usize, expected: Vec<String> },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("shape error: {0}")]
    Shape(String),

    #[error("elements belong to different seminorm families ({left} vs {right})")]
    FamilyMismatch { left: String, right: String },

    #[error("element is outside the domain of the section: {0}")]
    OutOfDomain(String),

    #[error("derivative undefined: no differentiable tail found within {scanned} terms")]
    UndefinedDerivative { scanned: u64 },

    #[error("expression is not differentiable at subterm `{0}`")]
    NonDifferentiable(String),

    #[error("elements are not separable: every probe decays below epsilon")]
    NotSeparable,

    #[error("scalar must be nonzero")]
    ZeroScalar,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
