use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid Cartan datum: {0}")]
    InvalidDatum(String),
    #[error("vertex {vertex} out of range for a rank {rank} datum")]
    InvalidVertex { vertex: usize, rank: usize },
    #[error("word {0} is not reduced")]
    NotReduced(String),
    #[error("word has length {got}, a reduced word of w0 has length {expected}")]
    WrongLength { got: usize, expected: usize },
    #[error("{what}: cap of {cap} exceeded")]
    CapExceeded { what: &'static str, cap: usize },
    #[error("{0:?} is not a positive root")]
    NotPositiveRoot(Vec<i64>),
    #[error("vertex {0} is neither a sink nor a source")]
    NotSinkOrSource(usize),
    #[error("vertex {0} is not a sink")]
    NotSink(usize),
    #[error("partitions have different dimension vectors: {0:?} vs {1:?}")]
    MismatchedNu(Vec<i64>, Vec<i64>),
    #[error("partition has a part equal to the simple root at vertex {0}")]
    NotInLocus(usize),
    #[error("word is not adapted to the quiver")]
    NotAdapted,
    #[error("representations live on different quivers")]
    QuiverMismatch,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error("field {0} is not finite")]
    InfiniteField(String),
    #[error("internal verification failed: {0}")]
    Verification(String),
    #[error("no consistent orientation ledger exists\n{0}")]
    NoConsistentLedger(String),
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
