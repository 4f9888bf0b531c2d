use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid word {letters:?}: {reason}")]
    InvalidWord { letters: Vec<u32>, reason: String },

    #[error("invalid permutation {letters:?}: {reason}")]
    InvalidPerm { letters: Vec<u32>, reason: String },

    #[error("index set {indices:?} is not a strictly increasing subset of 1..={len}")]
    IndexOutOfRange { indices: Vec<usize>, len: usize },

    #[error("cannot parse pattern {input:?} at byte {at}: {reason}")]
    PatternParse {
        input: String,
        at: usize,
        reason: String,
    },

    #[error("invalid pattern: {0}")]
    InvalidPattern(String),

    #[error("unknown statistic {0:?}")]
    UnknownStatistic(String),

    #[error("statistic {0} is not compatible with enumeration schemes")]
    NotEsCompatible(String),

    #[error(
        "statistic {stat} needs margin {margin} but deletion set reaches index {max_r} of a length-{len} prefix"
    )]
    Clearance {
        stat: String,
        margin: usize,
        max_r: usize,
        len: usize,
    },

    #[error("scheme clearance {clearance} is below the required margin {margin}; deepen the scheme or pass --auto-deepen")]
    ClearanceShortfall { clearance: String, margin: usize },

    #[error("scheme violates criterion {criterion} at prefix {prefix}: {detail}")]
    InvalidScheme {
        criterion: &'static str,
        prefix: String,
        detail: String,
    },

    #[error("malformed scheme document: {0}")]
    SchemeParse(String),

    #[error("n = {n} exceeds the brute-force cap of {cap}")]
    OracleCap { n: u32, cap: u32 },

    #[error("no scheme found within the search bounds: {0}")]
    NoScheme(String),

    #[error("invalid search bounds: {0}")]
    Bounds(String),

    #[error("internal invariant breached: {0}")]
    Invariant(String),
}
