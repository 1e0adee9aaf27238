use thiserror::Error;

/// Errors raised by word operations, derivations and the reversing engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("strand count must be at least 1")]
    ZeroStrands,
    #[error("generator s{index} is out of range for {n} strands")]
    GeneratorOutOfRange { index: usize, n: usize },
    #[error("images do not form a permutation of 1..={n}")]
    InvalidPermutation { n: usize },
    #[error("strand counts differ: {left} vs {right}")]
    StrandCountMismatch { left: usize, right: usize },
    #[error("letters at position {pos} do not match the relation")]
    PatternMismatch { pos: usize },
    #[error("word is not reduced")]
    NotReduced,
    #[error("words do not represent the same permutation")]
    NotEquivalent,
    #[error("strands {i} and {} never cross", .i + 1)]
    StrandsDoNotCross { i: usize },
    #[error("name sequences are not permutations of one another")]
    IncomparableSequences,
    #[error("replay failed at step {step}")]
    ReplayMismatch { step: usize },
    #[error("search exceeded the node limit of {limit}")]
    StateSpaceExceeded { limit: usize },
    #[error("reversing exceeded the step budget of {budget}")]
    StepBudgetExceeded { budget: u64 },
    #[error("invalid shape: {0}")]
    InvalidShape(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{what}: expected {expected}, got {actual}")]
    Mismatch {
        what: String,
        expected: String,
        actual: String,
    },
    #[error("diagram sweep got stuck after {swept} of {total} tiles")]
    SweepStuck { swept: usize, total: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
