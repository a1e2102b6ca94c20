//! Crate-wide error type.
//!
//! Errors fall into three families that the CLI maps onto distinct exit
//! codes: text that fails to parse, inputs that violate a documented
//! precondition, and internal invariant breaches (which indicate a bug, not
//! bad input).

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Input text did not match the polynomial grammars.
    #[error("parse error: {0}")]
    Parse(String),

    /// `p` must be a prime not exceeding 2^16.
    #[error("{0} is not a prime in the supported range (2..=65536)")]
    BadPrime(u64),

    /// Two operands were built over different base primes.
    #[error("mismatched base primes: {0} vs {1}")]
    PrimeMismatch(u64, u64),

    /// Two residues belong to different quotient rings.
    #[error("mismatched quotient contexts: modulus {0} vs {1}")]
    ContextMismatch(String, String),

    /// Division (or gcd normalization) by the zero polynomial.
    #[error("division by the zero polynomial")]
    DivisionByZero,

    /// gcd(0, 0) is undefined.
    #[error("gcd of two zero polynomials is undefined")]
    GcdOfZeros,

    /// The operation requires a monic polynomial.
    #[error("polynomial {0} must be monic")]
    NotMonic(String),

    /// The operation requires a nonconstant polynomial.
    #[error("polynomial must be nonconstant")]
    ConstantPolynomial,

    /// The operation requires the zero or a nonzero input and got the other.
    #[error("{0}")]
    Precondition(String),

    /// The equidistribution decision only applies to constant coefficients;
    /// a nonconstant `t`-coefficient makes the instance undecidable by this
    /// criterion (it is *not* a "false" verdict).
    #[error("undecidable by the additive-reduction criterion: {0}")]
    Undecidable(String),

    /// The exact search would need to visit more states than the configured
    /// cap; the caller should switch to the greedy/lower-bound mode.
    #[error("ring too large for exact search: {0} elements (cap {1})")]
    RingTooLarge(u64, u64),

    /// An internal invariant failed. Always a bug.
    #[error("internal invariant breach: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Exit code the CLI assigns to this error class.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) => 2,
            Error::Internal(_) => 4,
            _ => 3,
        }
    }
}
