use alloc::string::String;

/// Errors raised by the arithmetic, enumeration and search routines.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid modulus {0}: expected an odd integer greater than 1")]
    InvalidModulus(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{a} is not invertible modulo {modulus}")]
    NotInvertible { a: u64, modulus: u64 },
    #[error("moduli {0} and {1} are not coprime")]
    NonCoprimeModuli(u64, u64),
    #[error("n shares the factor {gcd} with the modulus {modulus}")]
    NotCoprime { gcd: u64, modulus: u64 },
    #[error("negative input")]
    NegativeInput,
    #[error("n is even")]
    EvenInput,
    #[error("invalid factorization: {0}")]
    InvalidFactorization(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("point ({x}, {y}) is not on the hyperbola modulo {modulus}")]
    NotOnHyperbola { x: u64, y: u64, modulus: u64 },
    #[error("point ({x}, {y}) lies outside the fundamental region")]
    OutsideRegion { x: u64, y: u64 },
    #[error("({a}, {b}) is not a target modulo {modulus}")]
    InvalidTarget { a: u64, b: u64, modulus: u64 },
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("n shares the prime {prime} with the search modulus")]
    SharedFactor { prime: u64 },
    #[error("arithmetic overflow: {0}")]
    Overflow(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;
