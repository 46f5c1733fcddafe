use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("the two primes must be distinct (got {0} twice)")]
    DistinctnessViolated(u64),

    #[error("{a} is not invertible modulo {n}")]
    NonCoprime { a: u64, n: u64 },

    #[error("{0} is not a unit modulo {1}")]
    NotInGroup(u64, u64),

    #[error("modulus {modulus} does not satisfy {requirement}")]
    BadModulus {
        modulus: u64,
        requirement: &'static str,
    },

    #[error("{g} is not a primitive root modulo {p}")]
    NotPrimitiveRoot { g: u64, p: u64 },

    #[error("{g} is not a common primitive root of {p} and {q}")]
    NotCommonPrimitiveRoot { g: u64, p: u64, q: u64 },

    #[error("gcd(p-1, q-1) = {found}, expected {expected}")]
    WrongOrder { expected: u64, found: u64 },

    #[error("element does not have the required multiplicative order {0}")]
    WrongElementOrder(u64),

    #[error("gcd of two zero polynomials is undefined")]
    BothZero,

    #[error("extension degree {0} is outside 1..=128")]
    DegreeOutOfRange(u32),

    #[error("modulus polynomial is not irreducible of degree {0}")]
    Reducible(u32),

    #[error("division by zero")]
    DivisionByZero,

    #[error("operands belong to different fields")]
    MixedFields,

    #[error("no element of order {n} in GF(2^{m})")]
    OrderUnavailable { n: u64, m: u32 },

    #[error("GF(2^{m}) has no subfield GF(2^{k})")]
    NoSubfield { m: u32, k: u32 },

    #[error("field element does not lie in the subfield GF(2^{0})")]
    NotInSubfield(u32),

    #[error("invalid hexadecimal polynomial string")]
    BadHex,
}

pub type Result<T> = std::result::Result<T, Error>;
