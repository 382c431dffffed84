use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("subspace is not coisotropic")]
    NotCoisotropic,
    #[error("subspace is not isotropic")]
    NotIsotropic,
    #[error("elements are not composable: {0}")]
    NotComposable(String),
    #[error("u o j does not equal t on ker(s)")]
    IncompatibleJ,
    #[error("subspace is not lambda-coisotropic")]
    NotLambdaCoisotropic,
    #[error("jacobi identity fails on basis triple ({0}, {1}, {2})")]
    JacobiFailure(usize, usize, usize),
    #[error("invalid Lie algebra: {0}")]
    InvalidLieAlgebra(String),
    #[error("invalid quadratic data: {0}")]
    InvalidQuadraticData(String),
    #[error("invalid triple: {0}")]
    InvalidTriple(String),
    #[error("invalid groupoid: {0}")]
    InvalidGroupoid(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("k is nonzero; use the reduced fiber")]
    KNotTrivial,
    #[error("k is not contained in c and h")]
    KNotContained,
    #[error("subspace is not K-stable: {0}")]
    NotKStable(String),
    #[error("f does not push beta1 forward to beta2")]
    FormNotPushedForward,
    #[error("candidate {index} has length {found}, expected {expected}")]
    CandidateDimMismatch { index: usize, expected: usize, found: usize },
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("invalid representation: {0}")]
    InvalidRep(String),
    #[error("inconsistent results: {0}")]
    Inconsistent(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("input error: {0}")]
    Input(String),
}
