use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    // weight tuples
    #[error("weight tuple has length {0}, need at least 4")]
    TupleTooShort(usize),
    #[error("weight {value} at position {index} is not strictly between 0 and 1")]
    WeightOutOfRange { index: usize, value: BigRational },
    #[error("weights sum to {0}, expected exactly 2")]
    WeightSum(BigRational),
    #[error("cannot parse rational {0:?}")]
    ParseRational(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("block {block:?} sums to {sum}, contraction needs every merged block to sum below 1")]
    ContractionInadmissible { block: Vec<usize>, sum: BigRational },

    // lattices and groups
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("invariant factors {0:?} do not form a divisor chain of integers >= 2")]
    InvariantFactors(Vec<BigInt>),
    #[error("quotient is infinite (zero invariant factor); deck groups must be finite")]
    InfiniteQuotient,
    #[error("sublattice {0} has linearly dependent generators")]
    DependentGenerators(String),

    // towers
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("B tower needs an odd prime (p = 2 makes twice a generator vanish), got p = {0}")]
    EvenPrimeForB(u64),
    #[error("fibration {name}: {reason}")]
    Fibration { name: String, reason: String },
    #[error("genus {0} is below 2; the base surface must be hyperbolic")]
    GenusTooSmall(u64),

    // group orders
    #[error("invalid group parameters: {0}")]
    GroupParameters(String),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error(
        "parabolic image order {denom} does not divide {numer}; exact ratio is {}",
        BigRational::new(numer.clone(), denom.clone())
    )]
    NotDivisible { numer: BigInt, denom: BigInt },

    // resource guards
    #[error("search space of {size} exceeds the configured cap of {cap}")]
    SearchSpaceTooLarge { size: BigInt, cap: BigInt },

    // fitting
    #[error("exponent fit: {0}")]
    Fit(String),

    #[error("malformed input: {0}")]
    Malformed(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Short machine-readable tag for error records.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::SearchSpaceTooLarge { .. } => "resource_refusal",
            Error::Io(_) => "io",
            _ => "validation",
        }
    }

    /// Process exit code: 3 for resource refusals, 2 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::SearchSpaceTooLarge { .. } => 3,
            _ => 2,
        }
    }
}
