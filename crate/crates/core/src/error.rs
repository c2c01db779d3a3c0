use thiserror::Error;

/// Errors raised by constructions and checks in this crate.
///
/// Certified negative answers (a graph that is not a DSRG, a partition that is
/// not a scheme) are ordinary return values, not errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    DegreeZero,
    #[error("extension degree must be at least {min}, got {got}")]
    DegreeTooSmall { min: u32, got: u32 },
    #[error("field of order {order} exceeds the cap {cap}")]
    FieldTooLarge { order: u64, cap: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero has no coset in F*/K")]
    ZeroElement,
    #[error("{n} does not divide q-1 = {q_minus_one}")]
    NotDivisor { n: u64, q_minus_one: u64 },
    #[error("q(q-1)/n = {value} is odd")]
    ParityCondition { value: u64 },
    #[error("frobenius exponent {j} out of range for degree {d}")]
    BadFrobenius { j: u32, d: u32 },
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("prime {p} is not congruent to 3 mod 4")]
    BadCongruence { p: u64 },
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("difference set lives in Z_{ds} but the scheme has n = {scheme}")]
    MismatchedN { ds: u32, scheme: u32 },
    #[error("basic set {0} straddles C and bC")]
    CNotASubgroup(usize),
    #[error("partition is not an association scheme: {0}")]
    NotAScheme(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph6 requires a symmetric loop-free graph")]
    AsymmetricForGraph6,
    #[error("{what} has {size} elements, above the cap {cap}")]
    TooLarge { what: &'static str, size: u64, cap: u64 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("manifest convention mismatch: {0}")]
    ConventionMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
