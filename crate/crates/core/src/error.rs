use thiserror::Error;

/// Error type shared by every module in the crate.
///
/// Variant names follow the operation contracts: constructors and checks
/// return the variant named in their precondition, never a panic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a prime: {0}")]
    NotPrime(u64),
    #[error("extension degree out of range: {0}")]
    DegreeOutOfRange(i64),
    #[error("field of size {q} exceeds the configured bound {bound}")]
    FieldTooLarge { q: u128, bound: u64 },
    #[error("zero argument")]
    ZeroArgument,
    #[error("GF({sub_q}) is not a subfield of GF({ext_q})")]
    NotASubfield { sub_q: u64, ext_q: u64 },
    #[error("{h} is not coprime to {n}")]
    NotCoprime { h: i64, n: u64 },
    #[error("value does not lie in Q(zeta_{target})")]
    NotInSubfield { target: u32 },
    #[error("p-adic precision exhausted after retries (cap {cap})")]
    PrecisionExceeded { cap: u32 },
    #[error("field mismatch: element of GF({elem_q}) used with GF({field_q})")]
    FieldMismatch { elem_q: u64, field_q: u64 },
    #[error("element is not in mu_{d}")]
    NotInMuD { d: u64 },
    #[error("additive character is trivial")]
    TrivialAdditive,
    #[error("multiplicative character is trivial")]
    TrivialCharacter,
    #[error("tuple arity {0} is too small")]
    ArityTooSmall(usize),
    #[error("{d} does not divide {m}")]
    BadDivisor { d: u64, m: u64 },
    #[error("tuple is not admissible mod {d}")]
    NotAdmissible { d: u64 },
    #[error("integrality violation in Stickelberger combination")]
    IntegralityViolation,
    #[error("modulus {0} out of range (need >= 3)")]
    BadModulus(u64),
    #[error("exponent must be nonzero mod {0}")]
    ZeroExponent(u64),
    #[error("value has a prime factor away from p (norm {norm} vs p-part {ppart})")]
    NotPUnit { norm: String, ppart: String },
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("enumeration budget exceeded: {cells} cells > {budget}")]
    BudgetExceeded { cells: u128, budget: u64 },
    #[error("integer overflow in exact kernel; value outside the supported grid")]
    Overflow,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
