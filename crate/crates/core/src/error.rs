use thiserror::Error;

/// Parse and well-formedness errors carrying a 1-based position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct SyntaxError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl SyntaxError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        SyntaxError { line, column, message: message.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemanticsError {
    #[error("enr is undefined on this input: {0}")]
    EnrUndefined(String),
    #[error("state cap of {0} exceeded")]
    StateCap(usize),
    #[error("process is not a state of this transition system")]
    UnknownState,
    #[error("process is not well formed")]
    NotWellFormed,
    #[error("process is not initial")]
    NotInitial,
    #[error("occurrence path does not address an executed prefix")]
    BadOccurrence,
    #[error("process is not reachable from its initial version")]
    Unreachable,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("unknown configuration")]
    UnknownConfiguration,
    #[error("unknown event `{0}`")]
    UnknownEvent(String),
    #[error("duplicate event `{0}`")]
    DuplicateEvent(String),
    #[error("duplicate configuration {0}")]
    DuplicateConfiguration(String),
    #[error("event `{0}` is not a proof term")]
    NotProofTerm(String),
    #[error("structure is not stable: {0}")]
    NotStable(String),
    #[error("invalid json: {0}")]
    Json(String),
    #[error("invalid label: {0}")]
    Label(#[from] SyntaxError),
    #[error("cursor is not a configuration of the structure")]
    CursorNotConfiguration,
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
    #[error("configuration cap of {0} exceeded")]
    ConfigurationCap(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LogicError {
    #[error("environment is not permissible: {0}")]
    NotPermissible(String),
    #[error("history too short: {needed} occurrences of `{action}` needed, {available} recorded")]
    HistoryTooShort { action: String, needed: usize, available: usize },
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Equivalence(#[from] EquivalenceError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EquivalenceError {
    #[error("{0} input is not a stable configuration structure")]
    NotStable(&'static str),
    #[error("game position cap of {0} exceeded")]
    PositionCap(usize),
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
    #[error(transparent)]
    Structure(#[from] StructureError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarnessError {
    #[error("invalid generator configuration: {0}")]
    BadConfig(String),
    #[error("rejection budget exhausted: {produced} of {wanted} items produced")]
    RejectionBudget { wanted: usize, produced: usize },
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Equivalence(#[from] EquivalenceError),
}
