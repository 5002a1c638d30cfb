use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("characteristic 2 is not supported")]
    CharacteristicTwo,
    #[error("{0} is not an odd prime below 2^31")]
    NotAnOddPrime(u64),
    #[error("denominator of {value} vanishes modulo {prime}")]
    DenominatorVanishes { value: String, prime: u64 },
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid variety spec `{0}`")]
    InvalidSpec(String),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("determinant of a {0}x{0} polynomial matrix exceeds the expansion budget (max 8)")]
    DeterminantBudget(usize),
    #[error("monomial {0} is not among the coordinate images")]
    NotLiftable(String),
    #[error("generator set is linearly dependent ({rank} independent of {len})")]
    DependentGenerators { rank: usize, len: usize },
    #[error("ambient mismatch: expected {expected} coordinates, found {found}")]
    AmbientMismatch { expected: usize, found: usize },
    #[error("pivot variable {0} does not occur in the hyperplane")]
    PivotAbsent(String),
    #[error("enumeration needs {needed} rank evaluations, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("certificate rejected: {0}")]
    CertificateRejected(String),
    #[error("{0}")]
    Degenerate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
