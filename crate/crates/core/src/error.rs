use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("sequence length must be at least 2, got {0}")]
    LengthTooShort(usize),
    #[error("invalid hex digit {0:?}")]
    InvalidHex(char),
    #[error("empty hex string")]
    EmptyHex,
    #[error("hex value {hex} does not fit in {n} bits")]
    HexOverflow { hex: String, n: usize },
    #[error("shift {shift} out of range 1..={max}")]
    ShiftOutOfRange { shift: usize, max: usize },
    #[error("element values must be +1 or -1, got {0}")]
    InvalidElement(i64),
    #[error("cannot extend a length-{n} state past depth {depth}")]
    DepthExceeded { n: usize, depth: usize },
    #[error("center assignment requires odd length at depth (n-1)/2 (n = {n}, depth = {depth})")]
    CenterNotAllowed { n: usize, depth: usize },
    #[error("split depth {depth} out of range 1..={max}")]
    SplitDepthOutOfRange { depth: usize, max: usize },
    #[error("oracle length {n} outside supported range 2..={cap}")]
    OracleRange { n: usize, cap: usize },
    #[error("invalid length range {min}..={max}")]
    InvalidRange { min: usize, max: usize },
    #[error("bound must be at least 1")]
    ZeroBound,
    #[error("package lengths must be increasing by 2 from the first: {0:?}")]
    PackageLengths(Vec<usize>),
    #[error("malformed {kind} line {line}: {reason}")]
    Parse {
        kind: &'static str,
        line: usize,
        reason: String,
    },
    #[error("checkpoint header mismatch: {0}")]
    CheckpointMismatch(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
