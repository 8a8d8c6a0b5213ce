use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Valid inputs that contradict one of the packet identities. These are
/// reported as findings, separately from caller mistakes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Finding {
    #[error("inconsistent packet data: {card_g} does not divide {card_star}")]
    InconsistentPacketData { card_star: u64, card_g: u64 },
    #[error("violates the |X| identity: {card_star}/{card_g} is not a perfect square")]
    ViolatesXIdentity { card_star: u64, card_g: u64 },
    #[error("packet of inner form exceeds split packet: {card_g} > {card_star}")]
    InnerPacketExceedsSplit { card_star: u64, card_g: u64 },
    #[error("not a valid SL-type parameter: S_phi = A/Z is non-abelian")]
    NonAbelianQuotient,
    #[error("no common multiplicity: Irr(A, zeta) has degrees {degrees:?}")]
    NoCommonMultiplicity { degrees: Vec<u64> },
    #[error("scenario violates the numerical bound: {0}")]
    ViolatesNumericalBound(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("group order {order} exceeds cap {cap}")]
    OrderCap { order: usize, cap: usize },
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error(transparent)]
    Finding(#[from] Finding),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn parse_at(column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line: 1,
            column,
            message: message.into(),
        }
    }

    pub(crate) fn from_json(err: &serde_json::Error) -> Self {
        Error::Parse {
            line: err.line(),
            column: err.column(),
            message: err.to_string(),
        }
    }
}
