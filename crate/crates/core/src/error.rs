use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("coefficient ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),

    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("value {0} is not representable in {1}")]
    NotRepresentable(String, String),

    #[error("prime {p} is not admissible for {family}")]
    Inadmissible { p: u64, family: String },

    #[error("recurrence index must be at least 1 for a step, got {0}")]
    StepIndex(u64),

    #[error("cross-check failed: {0}")]
    CrossCheck(String),

    #[error("monomial θ₂^{0}·θ₄^{1} lies outside the expected lattice for n = {2}")]
    Lattice(u32, u32, u64),

    #[error("prime {0} has bad reduction")]
    BadReduction(u64),

    #[error("singular curve (zero discriminant)")]
    Singular,

    #[error("could not factor discriminant cofactor {0}")]
    Factorization(String),

    #[error("tolerance {0:e} is out of range for double precision")]
    Tolerance(f64),

    #[error("precision of {0} bits is below the 64-bit minimum")]
    PrecisionTooLow(u32),

    #[error("numeric non-convergence: {0}")]
    NonConvergence(String),

    #[error("invalid range {0}..{1}")]
    Range(u64, u64),
}
