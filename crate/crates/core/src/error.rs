use thiserror::Error;

/// Which of the two congruences handed to the cube constructor failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CongruenceSlot {
    /// `x^2 = D (mod 4m)` with `0 <= x <= 2|m| - 1`
    First,
    /// `y^2 = D (mod 4n)` with `0 <= y <= 2|n| - 1`
    Second,
}

impl std::fmt::Display for CongruenceSlot {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CongruenceSlot::First => write!(f, "x^2 = D (mod 4m)"),
            CongruenceSlot::Second => write!(f, "y^2 = D (mod 4n)"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus must be positive")]
    ZeroModulus,
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a discriminant (must be nonzero and 0 or 1 mod 4)")]
    NotDiscriminant(i64),
    #[error("{0} is not an odd discriminant")]
    EvenDiscriminant(i64),
    #[error("{0} is not a fundamental discriminant")]
    NotFundamental(i64),
    #[error("discriminant {0} is not negative; only definite forms are supported")]
    NotNegative(i64),
    #[error("discriminants differ: {0} vs {1}")]
    MismatchedDiscriminants(String, String),
    #[error("form {0} is not primitive")]
    Imprimitive(String),
    #[error("form {0} is not positive definite")]
    NotPositiveDefinite(String),
    #[error("congruence {slot} fails: {detail}")]
    Congruence {
        slot: CongruenceSlot,
        detail: String,
    },
    #[error("degenerate invariants: D, m and n must all be nonzero")]
    DegenerateInvariants,
    #[error("m and n must be nonzero")]
    ZeroCoefficient,
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not lower triangular")]
    NotLowerTriangular,
    #[error("matrix is not alternating")]
    NotAlternating,
    #[error("pair lies outside W: r1 = {0}")]
    OutsideW(String),
    #[error("value {0} is not integral")]
    NotIntegral(String),
    #[error("prime {p} ramifies for discriminant {disc}")]
    Ramified { p: u64, disc: i64 },
    #[error("Satake parameter must be nonzero")]
    ZeroSatake,
    #[error("Satake parameter {0} has alpha^2 = 1")]
    DegenerateSatake(String),
    #[error("series has zero constant term and cannot be inverted")]
    NonUnitSeries,
    #[error("value {0} does not fit the 64-bit arithmetic range")]
    Overflow(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
