use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid channel: {0}")]
    InvalidChannel(String),

    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    #[error("block length {0} is not a power of two >= 2")]
    NotPowerOfTwo(usize),

    #[error("construction method `{method}` not applicable: {reason}")]
    MethodMismatch {
        method: &'static str,
        reason: String,
    },

    #[error("budget exceeded: {0}")]
    Budget(String),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("block {block} out of range for a {blocks}-block session")]
    BlockOutOfRange { block: usize, blocks: usize },

    #[error(
        "infeasible chain: block {block} needs {needed} relay bits but the previous block only has {available} information indices; increase N or lower the adversary fractions"
    )]
    InfeasibleChain {
        block: usize,
        needed: usize,
        available: usize,
    },

    #[error("length mismatch: expected {expected}, got {got} ({what})")]
    LengthMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("missing relay bits for block {0}")]
    MissingRelay(usize),

    #[error("config error{}: {msg}", line.map(|l| format!(" (line {l})")).unwrap_or_default())]
    Config { line: Option<usize>, msg: String },

    #[error("oracle mismatch: {0}")]
    OracleMismatch(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config {
            line: None,
            msg: msg.into(),
        }
    }
}
