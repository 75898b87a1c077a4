use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("alphabet mismatch: {left:?} vs {right:?}")]
    AlphabetMismatch { left: Vec<char>, right: Vec<char> },

    #[error("duplicate letter {0:?} in alphabet")]
    DuplicateLetter(char),

    #[error("state {state} out of range 1..={n}")]
    StateOutOfRange { state: usize, n: usize },

    #[error("transformation has {got} images, expected {expected}")]
    TransformationLength { expected: usize, got: usize },

    #[error("automaton must have at least one state")]
    NoStates,

    #[error("epsilon transitions are not enabled for this automaton")]
    EpsilonNotAllowed,

    #[error("unknown letter {0:?}")]
    UnknownLetter(char),

    #[error("automaton is not minimal ({states} states, minimal form has {minimal})")]
    NotMinimal { states: usize, minimal: usize },

    #[error("expected exactly one final state, found {0}")]
    FinalStateCount(usize),

    #[error("semigroup closure exceeded cap {cap} (reached {reached} elements)")]
    SemigroupCap { cap: usize, reached: usize },

    #[error("{class} witness requires n >= {min}, got {n}")]
    ParameterOutOfRange {
        class: &'static str,
        n: usize,
        min: usize,
    },

    #[error("dialect has {got} slots but the alphabet has {expected} letters")]
    DialectLength { expected: usize, got: usize },

    #[error("dialect maps two letters to {0:?}")]
    DuplicateDialectImage(char),

    #[error("invalid dialect: {0}")]
    InvalidDialect(String),

    #[error("atom sweep limited to n <= {limit}, got {n}")]
    SweepLimit { n: usize, limit: usize },

    #[error("atom formula for {class} ideals does not cover S = {subset}")]
    CaseNotCovered { class: &'static str, subset: String },

    #[error("no bound for {class} / {measure}")]
    UnknownBound {
        class: &'static str,
        measure: &'static str,
    },

    #[error("invalid bound parameters: {0}")]
    InvalidParameters(String),

    #[error("invalid automaton description: {0}")]
    InvalidJson(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
