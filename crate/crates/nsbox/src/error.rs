use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors shared by all modules of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("party count {0} not supported (need 2 ..= {max})", max = crate::boxes::MAX_PARTIES)]
    PartyCount(usize),

    #[error("bias {0} outside [0, 1]")]
    BiasRange(f64),

    #[error("probability {0} outside [0, 1]")]
    ProbabilityRange(f64),

    #[error("bit string {string:?} is not a {expected_len}-bit 0/1 string")]
    BadBitString { string: String, expected_len: usize },

    #[error("index {index} out of range for {bits}-bit strings")]
    IndexRange { index: usize, bits: usize },

    #[error("strategy table has {got} entries, expected {expected}")]
    StrategyLength { got: usize, expected: usize },

    #[error("party subset is empty")]
    EmptySubset,

    #[error("party subset must be strictly increasing and within range")]
    BadSubset,

    #[error("box has {got} parties, expected {expected}")]
    PartyMismatch { got: usize, expected: usize },

    #[error("group split k={k} invalid for {n} parties (need 1 <= k < n)")]
    BadSplit { n: usize, k: usize },

    #[error("box signals (max marginal discrepancy {discrepancy:.3e}); refusing to use it")]
    SignalingBox { discrepancy: f64 },

    #[error("box row for input {input} sums to {sum}, not 1")]
    NotNormalized { input: String, sum: f64 },

    #[error("concatenation depth {0} outside supported range {1}")]
    DepthRange(usize, &'static str),

    #[error("hybrid bound oracle supports 2 ..= 4 parties, got {0}")]
    OracleRange(usize),

    #[error("joint distribution sums to {0}, not 1")]
    JointNotNormalized(f64),

    #[error("table entry {value} for input {input} is not a probability")]
    BadTableEntry { input: String, value: f64 },

    #[error("table is missing input {0:?} or has a wrong-length row")]
    BadTableShape(String),

    #[error("cannot parse box source {0:?}: expected a file path or \"isotropic:N:E\"")]
    BadBoxSource(String),

    #[error("{0}")]
    Unsupported(&'static str),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
}
