use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a supported prime modulus")]
    NotPrime(u64),
    #[error("unknown field `{0}` (expected `q` or `fp:<prime>`)")]
    BadField(String),
    #[error("division by zero in the coefficient field")]
    DivisionByZero,

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("ambient mismatch: expected {expected} variables, got {got}")]
    AmbientMismatch { expected: usize, got: usize },
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,
    #[error("forms have unequal degrees")]
    UnequalDegrees,
    #[error("linear forms are not independent")]
    DependentLines,
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix is singular")]
    Singular,

    #[error("ideal is not Artinian within degree cap {cap}")]
    NotArtinian { cap: usize },
    #[error("ideal is not equigenerated (profile {profile:?})")]
    NotEquigenerated { profile: Vec<(usize, usize)> },
    #[error("datum violation: d = {d}, r = {r}")]
    DatumViolation { d: usize, r: usize },
    #[error("ideal is not Gorenstein: {0}")]
    NotGorenstein(String),

    #[error("matrix is not alternating at entry ({0}, {1})")]
    NotAlternating(usize, usize),
    #[error("pfaffian needs an even-size matrix, got {0}")]
    OddSize(usize),
    #[error("maximal pfaffians need an odd-size matrix, got {0}")]
    EvenSize(usize),

    #[error("term {0} lies inside the pure-power ideal")]
    TermInPurePowerIdeal(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("degree too large for m: s = {s}")]
    DegreeTooLarge { s: i64 },
    #[error("no admissible random choice after {attempts} attempts (seed {seed})")]
    Reseed { seed: u64, attempts: usize },
    #[error("invalid argument: {0}")]
    Invalid(String),
}
