//! Crate error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus is not prime")]
    NotPrime,
    #[error("prime has {got} bits, need at least {need}")]
    PrimeTooSmall { got: u64, need: u64 },
    #[error("field cannot host {tbar} distinct nonzero x-coordinates")]
    FieldTooSmall { tbar: usize },
    #[error("need at least 3 x-coordinates, got {0}")]
    TooFewCoordinates(usize),
    #[error("duplicate x-coordinate")]
    DuplicateX,
    #[error("interpolation needs at least one point")]
    EmptyInterpolation,
    #[error("zero polynomial has no defined root set")]
    ZeroPolynomial,
    #[error("message lies outside the message universe")]
    MessageOutsideUniverse,
    #[error("invalid time schedule: {0}")]
    InvalidSchedule(String),
    #[error("base must lie in [1, N)")]
    BaseOutOfRange,
    #[error("prime bit length too small: {0}")]
    RsaBitsTooSmall(u32),
    #[error("squaring cancelled after {completed} of {requested} steps")]
    Cancelled { completed: u64, requested: u64 },
    #[error("chain solve cancelled after {solved} of {total} puzzles")]
    ChainCancelled {
        solved: usize,
        total: usize,
        /// Solutions and proofs for the completed prefix.
        partial: Box<crate::mhtlp::ChainSolution>,
    },
    #[error("OLE receiver input must be nonzero")]
    OleZeroInput,
    #[error("misbehavior detected during oblivious evaluation")]
    MisbehaviorDetected,
    #[error("pseudorandom sampling exhausted retry budget")]
    SamplingExhausted,
    #[error("coefficient count {got} does not match puzzle count {want}")]
    CoefficientCountMismatch { got: usize, want: usize },
    #[error("decoded polynomial has degree {got}, expected {want}")]
    DegreeMismatch { got: i64, want: usize },
    #[error("no decoded root matches the published commitment")]
    RootMismatch,
    #[error("malformed puzzle: {0}")]
    MalformedPuzzle(String),
    #[error("leader count {tddot} exceeds client count {n}")]
    TooManyLeaders { tddot: usize, n: usize },
    #[error("puzzle index {id} out of range for a chain of {len}")]
    PuzzleIndexOutOfRange { id: usize, len: usize },
    #[error("invalid scenario: {0}")]
    InvalidScenario(String),
    #[error("serialization: {0}")]
    Serialization(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Serialization(e.to_string())
    }
}
