use thiserror::Error;

/// Everything that can go wrong in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not prime")]
    CompositeModulus(u64),
    #[error("extension modulus is reducible over its base field")]
    ReducibleModulus,
    #[error("extension modulus must be monic of degree at least 1")]
    NonMonicModulus,
    #[error("division by zero")]
    DivisionByZero,
    #[error("exponent {0} is not prime")]
    NonPrimeExponent(u64),
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("operands belong to different field contexts")]
    CtxMismatch,
    #[error("gcd of two zero polynomials is undefined")]
    BothZero,
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("matrix is singular (ad - bc = 0)")]
    SingularMatrix,
    #[error("degree collapse: expected degree {expected}, got {got}")]
    DegreeCollapse { expected: usize, got: usize },
    #[error("eta undefined: {0}")]
    EtaUndefined(String),
    #[error("seed polynomial is not irreducible")]
    ReducibleSeed,
    #[error("requires dc != 0")]
    PreconditionDcZero,
    #[error("seed has no binomial origin")]
    MissingBinomialOrigin,
    #[error("binomial constant term must be nonzero")]
    ZeroConstant,
    #[error("binomial x^{n} - A is reducible")]
    BinomialReducible { n: u64 },
    #[error("binomial vanishes at the pole of the inverse matrix")]
    PoleClash,
    #[error("trace denominator a^n - c^n A vanishes")]
    DegenerateDenominator,
    #[error("{d} does not divide {n}")]
    NotADivisor { d: usize, n: usize },
    #[error("gcd({n}, {q}) != 1")]
    NotCoprime { n: u64, q: u64 },
    #[error("degree {degree} exceeds the limit {limit} for {what}")]
    DegreeLimit {
        degree: u64,
        limit: u64,
        what: &'static str,
    },
    #[error("field cardinality does not fit in 128 bits")]
    CardinalityOverflow,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("cannot parse {0:?} as a field element")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
