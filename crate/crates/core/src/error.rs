use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field size {0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field GF({p}^{m}) exceeds the size cap (p <= {p_cap}, m <= {m_cap}, q < 2^63)")]
    FieldTooLarge { p: u64, m: u64, p_cap: u64, m_cap: u32 },
    #[error("invalid field request: {0}")]
    InvalidFieldRequest(String),
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("dimension mismatch in {what}: expected {expected}, found {found}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("{what} = {value} exceeds the enumeration cap {cap} (raise it via CODE_DESIGNER_CAPS)")]
    CapExceeded { what: &'static str, value: u64, cap: u64 },
    #[error("infeasible length: n = {n} but ell = {ell}, so n + 1 - ell <= 0")]
    InfeasibleLength { n: usize, ell: usize },
    #[error(
        "exhaustive evaluation-point search failed over GF({q}) for n = {n}, ell = {ell}; \
         existence is guaranteed for q >= n + ell - 1, so this is a defect in the search"
    )]
    SearchExhausted { q: u64, n: usize, ell: usize },
    #[error("decoding failed: {0}")]
    DecodeFailure(&'static str),
    #[error("subset {omega:?} does not violate the block condition")]
    NotViolating { omega: Vec<usize> },
    #[error("malformed input: {0}")]
    Malformed(String),
}
