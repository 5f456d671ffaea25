use thiserror::Error;

/// Errors produced by field construction, analysis, and parsing.
///
/// Contract violations that indicate a programming bug (mixing variable
/// spaces in ring arithmetic, dividing by the zero polynomial, taking the
/// determinant of a non-square matrix) panic instead; everything reachable
/// from user input goes through this type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("substitution bindings do not match the polynomial's variables: {0}")]
    Substitution(String),

    #[error("the components do not define a vector field tangent to the sphere: {0}")]
    NotASphereField(String),

    #[error("degree constraint violated: {0}")]
    DegreeBound(String),

    #[error("the given polynomials are linearly dependent")]
    DependentBasis,

    #[error("polynomial is not in the span of the basis")]
    NotInSpan,

    #[error("invalid circle specification: {0}")]
    InvalidCircle(String),

    #[error("operation requires the {expected} family, got {found}")]
    FamilyMismatch { expected: String, found: String },

    #[error("parameter constraint violated: {0}")]
    Parameter(String),

    #[error("integration failed: {0}")]
    Integration(String),

    #[error("field specification error: {0}")]
    SpecFile(String),

    #[error("analysis error: {0}")]
    Analysis(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
