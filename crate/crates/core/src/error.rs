use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("p = {0} is even; only odd primes are supported")]
    EvenPrime(u64),
    #[error("{0} is not an odd prime")]
    NotPrime(u64),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("not p-integral")]
    NotPIntegral,
    #[error("division by zero")]
    DivisionByZero,
    #[error("quotient is not p-integral (divisor has larger valuation)")]
    DivisionByNonUnit,
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("prime mismatch between operands")]
    PrimeMismatch,
    #[error("sublattice is not contained in the superlattice")]
    NotIncluded,
    #[error("unknown prime label {0:?}")]
    UnknownLabel(String),
    #[error("inconsistent parameters: no such CM-field model ({0})")]
    InconsistentParameters(String),
    #[error("construction undefined: {0}")]
    ConstructionUndefined(String),
    #[error("unknown construction {0:?}")]
    UnknownConstruction(String),
    #[error("automorphism {which} is not defined for {variant}")]
    InvalidAutomorphism { which: String, variant: String },
    #[error("action undefined: lattice is not stable under complex conjugation")]
    ActionUndefined,
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("unknown lemma {0:?}")]
    UnknownLemma(String),
    #[error("enumeration budget exceeded: need {needed} elements, budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("depth insufficient: {0}")]
    DepthInsufficient(String),
}

pub type Result<T> = std::result::Result<T, Error>;
