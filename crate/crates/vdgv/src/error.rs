use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("size guard exceeded: {0}")]
    SizeGuardExceeded(String),
    #[error("not a subfield: degree {0} does not divide degree {1}")]
    NotASubfield(usize, usize),
    #[error("operation requires odd characteristic")]
    EvenCharacteristic,
    #[error("unsupported cyclotomic order {0}")]
    UnsupportedOrder(u64),
    #[error("value is not a rational integer")]
    NotRationalInteger,
    #[error("norm mismatch: {0}")]
    NormMismatch(String),
    #[error("non-integral coefficient in Newton reconstruction")]
    NonIntegralCoefficient,
    #[error("no composition factor exists")]
    NoSuchFactor,
    #[error("polynomial is not reduced (vanishing constant coefficient)")]
    NotReduced,
    #[error("kernel is not contained in F_p")]
    RootsNotInFp,
    #[error("no rational maximal totally isotropic subspace inside F_q")]
    NoRationalMaximalIsotropic,
    #[error("no rational lift of subspace element to the Heisenberg group")]
    NoRationalLift,
    #[error("element is not in the Heisenberg group")]
    NotInGroup,
    #[error("point does not lie on the curve")]
    PointNotOnCurve,
    #[error("element is not in V_R")]
    NotInVR,
    #[error("pairing value does not lie in F_p")]
    ValueNotInFp,
    #[error("central character is trivial")]
    CentralCharacterTrivial,
    #[error("zero element where a nonzero one is required")]
    ZeroElement,
    #[error("no solution to an internal linear system: {0}")]
    NoSolution(String),
    #[error("descended basis images are linearly dependent")]
    DependentImage,
    #[error("elements do not commute")]
    NotCommuting,
    #[error("no root found for descent table entry")]
    NoRoot,
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("value expected to be integral is not")]
    NonIntegral,
    #[error("cross-check mismatch: {0}")]
    OracleMismatch(String),
    #[error("map fails to be a character")]
    NotACharacter,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("internal error: {0}")]
    Internal(String),
}
