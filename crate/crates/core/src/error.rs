use thiserror::Error;

/// Errors shared by the whole library.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("evaluation at a pole")]
    Pole,
    #[error("expected a univariate expression in {0}")]
    NonUnivariate(&'static str),
    #[error("matrix is not square")]
    NonSquare,
    #[error("matrix shapes do not match")]
    ShapeMismatch,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("kernel basis is linearly dependent")]
    DependentBasis,
    #[error("divisor must be monic")]
    NonMonicDivisor,
    #[error("difference operators act on different variables")]
    VariableMismatch,
    #[error("exponents do not lie on a single integer-shift lattice")]
    MixedLattice,
    #[error("chain index out of multiplicity range: {0}")]
    IndexOutOfRange(String),
    #[error("transform is not trigonometric")]
    NotTrigonometric,
    #[error("invalid spectral data: {0}")]
    SpectralData(String),
    #[error("factorization is inconsistent: {0}")]
    Inconsistent(String),
    #[error("no pole-free basepoint found in the search range")]
    NoBasepoint,
    #[error("function not in the kernel of the spectral operator")]
    NotInKernel,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}
