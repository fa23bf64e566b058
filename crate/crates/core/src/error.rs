use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("matrix must be square with dimension >= 1")]
    NotSquare,

    #[error("polynomial must be nonconstant")]
    ConstantPolynomial,

    #[error("polynomial is zero")]
    ZeroPolynomial,

    #[error("polynomial is not primitive (content {0})")]
    NotPrimitive(String),

    #[error("polynomial is reducible over Q")]
    ReduciblePolynomial,

    #[error("matrix pair is not irreducible")]
    ReduciblePair,

    #[error("non-integral value: {0}")]
    NonIntegral(String),

    #[error("lattice is not contained in the other; witness {witness:?}")]
    NotContained { witness: Vec<String> },

    #[error("induced map is not well defined; witness {witness:?}")]
    IllDefinedMap { witness: Vec<String> },

    #[error("group elements belong to different quotient groups")]
    GroupMismatch,

    #[error("subset must contain the zero element")]
    MissingZero,

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("negative coordinate in {0:?}")]
    NegativeCoordinate(Vec<i64>),

    #[error("axis {axis} out of range for dimension {dim}")]
    AxisOutOfRange { axis: usize, dim: usize },

    #[error("subspace must have dimension below {0}")]
    FullDimensionalSubspace(usize),

    #[error("could not certify roots to tolerance {tol} (best radius {best})")]
    Certification { tol: String, best: String },

    #[error("infeasible search: {0}")]
    Infeasible(String),

    #[error("search budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("coordinate overflow")]
    Overflow,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// Stable machine-readable identifier.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::Singular => "singular",
            Error::NotSquare => "not_square",
            Error::ConstantPolynomial => "constant_polynomial",
            Error::ZeroPolynomial => "zero_polynomial",
            Error::NotPrimitive(_) => "not_primitive",
            Error::ReduciblePolynomial => "reducible_polynomial",
            Error::ReduciblePair => "reducible_pair",
            Error::NonIntegral(_) => "non_integral",
            Error::NotContained { .. } => "not_contained",
            Error::IllDefinedMap { .. } => "ill_defined_map",
            Error::GroupMismatch => "group_mismatch",
            Error::MissingZero => "missing_zero",
            Error::Empty(_) => "empty",
            Error::NegativeCoordinate(_) => "negative_coordinate",
            Error::AxisOutOfRange { .. } => "axis_out_of_range",
            Error::FullDimensionalSubspace(_) => "full_dimensional_subspace",
            Error::Certification { .. } => "certification_failed",
            Error::Infeasible(_) => "infeasible",
            Error::BudgetExceeded(_) => "budget_exceeded",
            Error::InvalidParameter(_) => "invalid_parameter",
            Error::Overflow => "overflow",
            Error::Parse(_) => "parse",
            Error::Internal(_) => "internal",
        }
    }

    /// Witness data attached to the error, if any.
    pub fn witness(&self) -> Option<Vec<String>> {
        match self {
            Error::NotContained { witness } | Error::IllDefinedMap { witness } => {
                Some(witness.clone())
            }
            Error::NegativeCoordinate(p) => Some(p.iter().map(|x| x.to_string()).collect()),
            _ => None,
        }
    }
}
