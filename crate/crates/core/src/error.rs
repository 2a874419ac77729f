use thiserror::Error;

/// Errors raised by the library. CLI-level input problems are mapped to exit code 2.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("polynomial is not a product of irreducibles of degree {0}")]
    DegreeMismatch(usize),
    #[error("element is zero in the residue field")]
    ZeroElement,
    #[error("singular model: discriminant is zero")]
    SingularModel,
    #[error("model is not integral at {0}")]
    NonIntegralModel(u64),
    #[error("twist parameter {0} is not a nonzero squarefree integer")]
    BadTwistParameter(String),
    #[error("invalid kernel: {0}")]
    InvalidKernel(String),
    #[error("p-adic valuation of alpha is {0}, expected 0 or 1")]
    AlphaOutOfRange(i64),
    #[error("bad reduction at {0}")]
    BadReduction(u64),
    #[error("prime {0} exceeds the point-counting bound {1}")]
    BoundExceeded(u64, u64),
    #[error("kernel polynomial factors into mixed degrees modulo {0}")]
    MixedDegrees(u64),
    #[error("Frobenius eigenvalue at {0} is ambiguous")]
    Ambiguous(u64),
    #[error("no Frobenius eigenvalue at {0} is compatible with the point count")]
    NoEigenvalue(u64),
    #[error("no character matches the Frobenius samples: {0}")]
    NoMatch(String),
    #[error("Frobenius samples do not generate the unit group: {0}")]
    Underdetermined(String),
    #[error("residue {0} is not an admissible residue-field size mod 24")]
    InvalidResidue(u64),
    #[error("{0} is not the discriminant valuation of additive potentially good reduction")]
    InvalidValuation(u32),
    #[error("residue degree {0} of the extension is even")]
    EvenResidueDegree(u64),
    #[error("ramification index {e} does not divide {m}")]
    EDoesNotDivide { e: u64, m: u64 },
    #[error("prime {0} is not 3 mod 4")]
    WrongResidue(u64),
    #[error("cannot factor {0} by trial division")]
    Factorization(String),
    #[error("root number unsupported at one or more places")]
    GlobalUnsupported,
    #[error("line {line}: cannot parse: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: invalid entry: {reason}")]
    InvalidEntry { line: usize, reason: String },
    #[error("{0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
