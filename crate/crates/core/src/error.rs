use thiserror::Error;

/// Errors raised by the library. Every variant except [`Error::Inconclusive`]
/// is a domain error: the inputs violate an operation's contract.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid slope: {0}")]
    InvalidSlope(String),
    #[error("infinity slope: {0}")]
    InfiniteSlope(String),
    #[error("0-surgery out of scope")]
    ZeroSurgery,
    #[error("spin^c label {label} out of range for modulus {modulus}")]
    LabelOutOfRange { label: i64, modulus: i64 },
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("invalid Alexander polynomial: {0}")]
    Alexander(String),
    #[error("invalid complex: {0}")]
    Complex(String),
    #[error("profile did not stabilize within truncation {0}; increase the truncation")]
    Unstable(u32),
    #[error("invalid profile: {0}")]
    InvalidProfile(String),
    #[error("profile unavailable for {0}")]
    ProfileUnavailable(String),
    #[error("tau unavailable for {0}")]
    TauUnavailable(String),
    #[error("no surgery presentation implemented for {0}")]
    NoSurgeryPresentation(String),
    #[error("not realizable by a profile: {0}")]
    NotRealizable(String),
    #[error("bound not asserted here: {0}")]
    BoundNotAsserted(String),
    #[error("matrix error: {0}")]
    Matrix(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("inconclusive: {0}")]
    Inconclusive(String),
}

impl Error {
    pub fn is_inconclusive(&self) -> bool {
        matches!(self, Error::Inconclusive(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
