use thiserror::Error;

/// Errors raised by the arithmetic kernels and the modules built on them.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch { left: String, right: String },

    #[error("invalid ring descriptor: {0}")]
    InvalidRing(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("element is not a unit in {ring}: {elem}")]
    NotAUnit { ring: String, elem: String },

    #[error("element {elem} does not belong to {ring}")]
    NotInRing { ring: String, elem: String },

    #[error("operation `{op}` is not supported over {ring}")]
    Unsupported { op: &'static str, ring: String },

    #[error("zero polynomial is not allowed here")]
    ZeroPolynomial,

    #[error("depth mismatch: {0} vs {1}")]
    DepthMismatch(usize, usize),

    #[error("truncation too shallow: depth {depth} cannot carry Frobenius F_{m}")]
    TruncationTooShallow { depth: usize, m: usize },

    #[error("universal polynomial coefficient is not an integer: {0}")]
    IntegralityViolation(String),

    #[error("cross-check failed: {0}")]
    CrossCheck(String),

    #[error("group mismatch: {left} vs {right}")]
    GroupMismatch { left: String, right: String },

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("invalid action: {0}")]
    InvalidAction(String),

    #[error("cochain is not a cocycle")]
    NotACocycle,

    #[error("not representable: {0}")]
    NotRepresentable(String),

    #[error("no resolvent found within {0} trials")]
    ResolventExhausted(usize),

    #[error("size limit exceeded: {0}")]
    TooLarge(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Short machine-readable tag, used by the CLI error JSON.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::RingMismatch { .. } => "ring_mismatch",
            Error::InvalidRing(_) => "invalid_ring",
            Error::NotPrime(_) => "not_prime",
            Error::NotAUnit { .. } => "not_a_unit",
            Error::NotInRing { .. } => "not_in_ring",
            Error::Unsupported { .. } => "unsupported",
            Error::ZeroPolynomial => "zero_polynomial",
            Error::DepthMismatch(..) => "depth_mismatch",
            Error::TruncationTooShallow { .. } => "truncation_too_shallow",
            Error::IntegralityViolation(_) => "integrality_violation",
            Error::CrossCheck(_) => "cross_check",
            Error::GroupMismatch { .. } => "group_mismatch",
            Error::InvalidGroup(_) => "invalid_group",
            Error::InvalidAction(_) => "invalid_action",
            Error::NotACocycle => "not_a_cocycle",
            Error::NotRepresentable(_) => "not_representable",
            Error::ResolventExhausted(_) => "resolvent_exhausted",
            Error::TooLarge(_) => "too_large",
            Error::InvalidInput(_) => "invalid_input",
            Error::Parse(_) => "parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
