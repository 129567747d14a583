use thiserror::Error;

/// Errors raised by the library. Every variant is a caller-side problem:
/// malformed input or a violated precondition.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown letter `{name}` at position {pos}")]
    UnknownLetter { name: String, pos: usize },

    #[error(
        "letter `{name}` at position {pos} has arity {expected} but {found} children were given"
    )]
    ArityMismatch {
        name: String,
        expected: usize,
        found: usize,
        pos: usize,
    },

    #[error("invalid node address {0}")]
    InvalidAddress(String),

    #[error("node {0} is not a leaf")]
    NotALeaf(String),

    #[error("node {0} is not a maximal internal node")]
    NotMaximal(String),

    #[error("node {0} cannot be contracted (it must be internal with at most one internal child)")]
    NotContractible(String),

    #[error("index {index} out of range for arity {arity}")]
    IndexOutOfRange { index: usize, arity: usize },

    #[error("the two trees are not comparable")]
    NotComparable,

    #[error("the two trees have no common upper bound")]
    NoUpperBound,

    #[error("the leaf has no shadow")]
    LeafHasNoShadow,

    #[error("operation requires a singleton alphabet, got {0} letters")]
    NotSingleton(usize),

    #[error("degree {degree} exceeds the oracle bound {bound}")]
    OracleBound { degree: usize, bound: usize },

    #[error("invalid element: {0}")]
    InvalidElement(String),

    #[error("substitution requires an inner series without constant term")]
    ConstantTerm,

    #[error("fixed-point iteration did not stabilize")]
    NoFixedPoint,

    #[error("unknown operad `{0}` (expected as, dias, comp, motz or fcat:<m>)")]
    UnknownOperad(String),

    #[error("the commutator is not diagonal at {element}: {commutator}")]
    NotDiagonal { element: String, commutator: String },
}

pub type Result<T> = std::result::Result<T, Error>;
