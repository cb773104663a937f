use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("empty input")]
    EmptyInput,

    #[error("matrix is not square")]
    NotSquare,

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("points do not span a hyperplane")]
    NotAHyperplane,

    #[error("affine span has dimension {got}, expected {expected}")]
    WrongAffineDimension { expected: usize, got: usize },

    #[error("polytope is not full-dimensional")]
    DegeneratePolytope,

    #[error("projection count {count} out of range for ambient dimension {dim}")]
    ProjectionOutOfRange { count: usize, dim: usize },

    #[error("apex order is not a permutation of the vertex indices")]
    InvalidApexOrder,

    #[error("polytope has a vertical facet")]
    VerticalFacet,

    #[error("hyperplane is vertical: last normal coordinate is zero")]
    VerticalHyperplane,

    #[error("point set is not in projection-general position")]
    NotPiGeneralPosition,

    #[error("shear vector must have last entry 1")]
    BadShearVector,

    #[error("diagonal scaling entries must be nonzero")]
    ZeroScaling,

    #[error("witness triangulation is invalid")]
    InvalidWitness,

    #[error("no triangulation into lattice-face simplices: projection formula does not apply")]
    FormulaInapplicable,

    #[error("interpolation oracle requires integral vertices")]
    OracleInapplicable,
}

pub type Result<T> = std::result::Result<T, Error>;
