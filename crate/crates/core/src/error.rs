use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("group order {order} exceeds the configured cap {cap}")]
    CapExceeded { order: u128, cap: u64 },
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("unsupported group parameter: {0}")]
    BadParameter(String),
    #[error("not a subgroup of the parent group")]
    NotSubgroup,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("class functions belong to different groups")]
    GroupMismatch,
    #[error("not a character: {0}")]
    NotACharacter(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("{what} = {value} is out of range {lo}..={hi}")]
    OutOfRange {
        what: &'static str,
        value: i64,
        lo: i64,
        hi: i64,
    },
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("search budget of {0} nodes exceeded")]
    BudgetExceeded(u64),
    #[error("character table computation failed: {0}")]
    CharacterTable(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
