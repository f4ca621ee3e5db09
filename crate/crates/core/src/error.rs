use thiserror::Error;

/// Failure while reading ring specs, element literals or polynomials.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at byte {offset}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(offset: usize, message: impl Into<String>) -> Self {
        ParseError {
            offset,
            message: message.into(),
        }
    }
}

/// The ring axiom a candidate automorphism or derivation table broke.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TwistError {
    #[error("table length {found} does not match carrier size {expected}")]
    TableSize { expected: usize, found: usize },
    #[error("automorphism is not additive: {0}")]
    NotAdditive(String),
    #[error("automorphism is not multiplicative: {0}")]
    NotMultiplicative(String),
    #[error("automorphism does not fix one")]
    DoesNotFixOne,
    #[error("automorphism is not bijective")]
    NotBijective,
    #[error("derivation is not additive: {0}")]
    DerivationNotAdditive(String),
    #[error("derivation violates the twisted Leibniz rule: {0}")]
    Leibniz(String),
    #[error("derivation does not vanish on one")]
    DerivationOfOne,
    #[error("{0}")]
    Unsupported(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("invalid twist: {0}")]
    Twist(#[from] TwistError),
    #[error("carrier too large: {size} elements (limit {limit})")]
    TooLarge { size: u128, limit: u128 },
    #[error("element handle {handle} is outside a ring of {size} elements")]
    ForeignElement { handle: u32, size: u32 },
    #[error("operands live in different contexts")]
    ContextMismatch,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial is not invariant: fR != Rf")]
    NotInvariant,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unknown theorem id {0:?}")]
    UnknownTheorem(String),
    #[error("enumeration budget exceeded: {instances} instances (limit {limit})")]
    BudgetExceeded { instances: u128, limit: u128 },
}

pub type Result<T> = std::result::Result<T, Error>;
