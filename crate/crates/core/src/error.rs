use thiserror::Error;

/// Errors raised by construction, analysis and parsing routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("alphabet must contain at least one symbol")]
    EmptyAlphabet,
    #[error("duplicate symbol `{0}` in alphabet")]
    DuplicateSymbol(String),
    #[error("symbol `{0}` is not in the alphabet")]
    SymbolOutsideAlphabet(String),

    #[error("forbidden set is empty")]
    EmptySet,
    #[error("the empty word cannot be forbidden")]
    EmptyWordForbidden,
    #[error("forbidden set is redundant: `{shorter}` is a subword of `{longer}`")]
    RedundantWord { shorter: String, longer: String },
    #[error("the two words are identical")]
    IdenticalWords,

    #[error("state {state} has two outgoing edges labeled `{label}`")]
    NondeterministicState { state: usize, label: String },
    #[error("edge {from} -> {to} references an undeclared state")]
    DanglingEdge { from: usize, to: usize },
    #[error("edge label `{0}` is not in the alphabet")]
    UnknownLabel(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("block {block:?} is not merge-consistent on label `{label}`")]
    InconsistentBlock { block: Vec<usize>, label: String },
    #[error("unknown state {0}")]
    UnknownState(usize),

    #[error("failure function is undefined at state `{0}`")]
    FailureUndefined(String),
    #[error("sink state `{0}` has no outgoing edges")]
    SinkHasNoEdges(String),
    #[error("expected exactly two forbidden words, found {0}")]
    NotTwoWords(usize),
    #[error("forbidden words have unequal lengths")]
    UnequalLengths,
    #[error("forbidden set is not of the form {{a^n, a x}}: {0}")]
    ShapeMismatch(String),
    #[error("alphabet has {0} symbols; at least 3 are required")]
    AlphabetTooSmall(usize),
    #[error("failure iteration from `{0}` left the distinguished prefixes")]
    FailureChainBroken(String),

    #[error("constrained system is degenerate: every symbol is forbidden")]
    DegenerateLanguage,
    #[error("graph is not follower-separated")]
    NotFollowerSeparated,
    #[error("higher edge graph needs a longest forbidden word of length >= 2")]
    OrderTooSmall,

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("json: {0}")]
    Json(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Json(err.to_string())
    }
}
