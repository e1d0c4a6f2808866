use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("leading coefficient in {var} is not a scalar; pseudo-division required")]
    NonScalarLeadingCoefficient { var: String },
    #[error("divisor has degree zero in {var}")]
    ZeroDegreeDivisor { var: String },
    #[error("denominator factor has no Gaussian-rational root: {factor}")]
    UnsupportedDenominator { factor: String },
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("ideal is not zero-dimensional")]
    NotZeroDimensional,
    #[error("form Q dx - P dy is not exact")]
    NotExact,
    #[error("(P_x + Q_y)/P depends on y")]
    DependsOnY,
    #[error("rational map is degenerate: {0}")]
    DegenerateMap(String),
    #[error("invalid rational map: {0}")]
    InvalidMap(String),
    #[error("polynomial is not invariant: {0}")]
    NotInvariant(String),
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("factor of V not among invariant curves: {0}")]
    UnfactoredResidual(String),
    #[error("partial-fraction exponents are not constant: {0}")]
    NonConstantExponents(String),
    #[error("P(0,0) = 0: formal solution through the origin is not regular")]
    SingularAtOrigin,
    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),
    #[error("domain error: {0}")]
    DomainCrossing(String),
    #[error("integrator step failure: {0}")]
    StepFailure(String),
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("expression is not a polynomial: {0}")]
    NonPolynomial(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
