use alloc::string::String;

/// Errors raised by the library.
///
/// Resource guards are reported separately from input errors so callers
/// (the CLI in particular) can map them to distinct exit codes.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid signature: {0}")]
    InvalidSignature(String),
    #[error("invalid structure: {0}")]
    InvalidStructure(String),
    #[error("signature mismatch")]
    SignatureMismatch,
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("empty input: {0}")]
    Empty(&'static str),
    #[error("resource guard `{guard}` exceeded: {detail}")]
    Guard { guard: &'static str, detail: String },
    #[error("not a core tree: {0}")]
    NotCoreTree(String),
    #[error("the single-vertex tree has no dual")]
    TrivialTree,
    #[error("input is not a core: {0}")]
    NotCore(String),
    #[error("structures are not pairwise incomparable: {0}")]
    NotIncomparable(String),
    #[error("positional family not suitable: {0}")]
    UnsuitableFamily(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("not a lattice: {0}")]
    NotALattice(String),
}

impl Error {
    pub(crate) fn guard(guard: &'static str, detail: String) -> Self {
        Error::Guard { guard, detail }
    }

    /// True for resource-guard trips.
    pub fn is_guard(&self) -> bool {
        matches!(self, Error::Guard { .. })
    }
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
