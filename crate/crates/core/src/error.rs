use thiserror::Error;

/// Errors raised by the algebra engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    MalformedInput(String),
    #[error("context mismatch: {0}")]
    ContextMismatch(String),
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("element {0} does not lie in the maximal ideal")]
    NotInMaximalIdeal(String),
    #[error("ideal is not contained in the maximal ideal: {0}")]
    NotLocal(String),
    #[error("no element of the ideal avoids the given primes (contained in {0})")]
    NoAvoider(String),
    #[error("avoidance search exhausted; coefficient field too small")]
    FieldTooSmall,
    #[error("requested length {requested} exceeds depth {depth}")]
    ExceedsDepth { requested: usize, depth: String },
    #[error("depth is infinite; no top local cohomology module")]
    NoTop,
    #[error("sequence fails the predicate at index {index}")]
    NotASequence { index: usize },
    #[error("permutability check declined for j = {0} > 4")]
    TooManyPermutations(usize),
    #[error("no stable window detected: {0}")]
    Inconclusive(String),
    #[error("graded presentation is not homogeneous: {0}")]
    NotHomogeneous(String),
}

impl Error {
    /// Whether the error belongs to the mathematical-domain class (as opposed to
    /// malformed input or an unsupported coefficient field).
    pub fn is_domain(&self) -> bool {
        !matches!(
            self,
            Error::MalformedInput(_) | Error::ContextMismatch(_) | Error::UnsupportedField(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
