use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    /// The computation ran out of p-adic precision. `needed` is the working
    /// precision the caller should request to obtain the target.
    #[error("insufficient precision: have {have}, need at least {needed}")]
    InsufficientPrecision { have: i64, needed: i64 },

    #[error("modulus p^{precision} for p = {p} does not fit in 63 bits")]
    PrecisionOverflow { p: u64, precision: u32 },

    #[error("value is not p-integral: {0}")]
    NotIntegral(String),

    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("congruence violated at mu = {mu}, s = {s}: {lhs} != {rhs} mod p^{modulus_exp}")]
    CongruenceViolation {
        mu: u64,
        s: u32,
        lhs: u64,
        rhs: u64,
        modulus_exp: u32,
    },

    #[error("identity violated: lhs = {lhs}, rhs = {rhs}")]
    IdentityViolation { lhs: String, rhs: String },

    #[error("divisibility violated at index {index}: valuation {found} < required {required}")]
    DivisibilityViolation { index: u64, found: u32, required: u32 },

    #[error("structural error: {0}")]
    Structural(String),

    #[error("domain too large: {estimate} evaluations exceeds limit {limit}")]
    TooLarge { estimate: u128, limit: u128 },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
