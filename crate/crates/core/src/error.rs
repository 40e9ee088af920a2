use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("outcome must be +1 or -1, got {0}")]
    InvalidOutcome(i64),

    #[error("data set is empty; a correlation estimate needs at least one trial")]
    Empty,

    #[error("sequence lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("angle {name} is not finite ({value})")]
    NonFiniteAngle { name: &'static str, value: f64 },

    #[error("probability {name} = {value} is outside [0, 1]")]
    InvalidProbability { name: &'static str, value: f64 },

    #[error("probabilities sum to {sum}, expected 1")]
    NotNormalized { sum: f64 },

    #[error("matched-pairs estimator has no trials with a-outcome {outcome:+} in arm {arm}")]
    InsufficientMatches { arm: u8, outcome: i8 },

    #[error("sample count must be at least 1")]
    ZeroSamples,

    #[error("grid resolution must be at least 2, got {0}")]
    Resolution(usize),

    #[error("sample-size list must be nonempty and strictly ascending")]
    SampleList,

    #[error("data inequality violated on a sampled data set (margin {margin})")]
    IdentityViolated { margin: f64 },

    #[error("line {line}: cell {cell:?} is not one of +1, -1, 1, -1")]
    Parse { line: u64, cell: String },

    #[error("line {line}: expected {expected} cells, found {found}")]
    RaggedRow { line: u64, expected: usize, found: usize },

    #[error("line {line}: data needs 3 (a,b,bp) or 4 (a,ap,b,bp) columns, found {found}")]
    ColumnCount { line: u64, found: usize },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{0}")]
    Csv(#[from] csv::Error),
}
