use thiserror::Error;

/// Errors raised by the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("field mismatch: Q(zeta_{0}) vs Q(zeta_{1})")]
    FieldMismatch(u32, u32),

    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("variable x{index} out of range for a ring with {num_vars} variables")]
    VariableOutOfRange { index: usize, num_vars: usize },

    #[error("`z` is not available when the root order is 1")]
    NoRootOfUnity,

    #[error("polynomials live in different rings")]
    RingMismatch,

    #[error("polynomial is not homogeneous")]
    NotHomogeneous,

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: u32, found: u32 },

    #[error("wrong tuple length: expected {expected}, found {found}")]
    Arity { expected: usize, found: usize },

    #[error("matrix dimension {dim} exceeds the determinant limit {limit}")]
    MatrixTooLarge { dim: usize, limit: usize },

    #[error("required slice dimension {required} exceeds the configured limit {limit}")]
    ResourceLimit { required: u128, limit: usize },

    #[error("reference polynomial lies in the ideal; no unique ratio exists")]
    ReferenceInIdeal,

    #[error("polynomials are not proportional modulo the ideal")]
    NotProportional,

    #[error("summand {summand}: decomposition mismatch, sum f*g - F = {residual}")]
    DecompositionMismatch { summand: usize, residual: String },

    #[error("summand {summand}: f-list is not a complete intersection (Hilbert function differs at degree {degree}: {found} vs {expected})")]
    NotCompleteIntersection {
        summand: usize,
        degree: u32,
        found: usize,
        expected: u128,
    },

    #[error("ideal is not Artinian Gorenstein of socle {socle}: {reason}")]
    NotGorenstein { socle: u32, reason: String },

    #[error("integrality check failed: {0}")]
    Integrality(String),

    #[error("subspaces live in different ambient spaces ({0} vs {1})")]
    AmbientMismatch(usize, usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Coarse classification used by front ends to pick exit codes.
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Syntax { .. } | Error::VariableOutOfRange { .. } | Error::NoRootOfUnity => {
                ErrorKind::Parse
            }
            Error::ResourceLimit { .. } | Error::MatrixTooLarge { .. } => ErrorKind::Resource,
            _ => ErrorKind::Precondition,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Parse,
    Precondition,
    Resource,
}
