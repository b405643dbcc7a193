use thiserror::Error;

/// Errors raised by field construction, arithmetic and the enumerators.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("extension degree must be at least 1")]
    ZeroDegree,

    #[error("field of order {p}^{n} exceeds the 63-bit support ceiling")]
    CeilingExceeded { p: u64, n: u32 },

    #[error("inversion of zero")]
    ZeroInverse,

    #[error("power test with n = 0")]
    ZeroRootDegree,

    #[error("coefficient {coeff} is out of range for characteristic {p}")]
    CoefficientOutOfRange { coeff: u64, p: u64 },

    #[error("expected {expected} coefficients, got {got}")]
    CoefficientCount { expected: usize, got: usize },

    #[error("operation needs a tower of degree {expected}, got degree {got}")]
    WrongTowerDegree { expected: u32, got: u32 },

    #[error("tower degree {0} is outside 1..=4")]
    TowerDegreeOutOfRange(u32),

    #[error(
        "brute-force scan needs {representatives} projective representatives, \
         exceeding the budget of {budget}"
    )]
    BudgetExceeded { representatives: u128, budget: u64 },

    #[error("root finding failed for a polynomial of degree {0}")]
    RootFinding(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
