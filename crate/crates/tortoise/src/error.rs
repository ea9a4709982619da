use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Error)]
pub enum Error {
    /// A precondition on an operation was violated by the caller.
    #[error("usage error: {0}")]
    Usage(String),

    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A word failed to sort within the iteration cap. The cap is a guard
    /// against implementation defects; sorting is guaranteed to terminate.
    #[error("iteration cap exceeded: word of length {len} not sorted after {cap} tortoise iterations")]
    IterationCap { len: usize, cap: usize },

    /// Factor enumeration did not stabilize within the configured prefix cap.
    #[error("resource cap exceeded: length-{n} factor set not stable within prefix length {max}")]
    ResourceCap { n: usize, max: u64 },

    /// A word string did not parse.
    #[error("cannot parse word {input:?}: {msg}")]
    WordParse { input: String, msg: String },

    /// A DFAO description file did not parse.
    #[error("dfao parse error at line {line}: {msg}")]
    DfaoParse { line: usize, msg: String },

    /// A DFAO description parsed but is not a total automaton.
    #[error("invalid dfao: {0}")]
    DfaoInvalid(String),

    /// No threshold exists within the scanned range.
    #[error("no threshold found: {0}")]
    NoThreshold(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code the CLI maps this error to.
    ///
    /// 2 = usage or parse error, 3 = resource cap. Verification failures are
    /// not errors; they are reported values and exit with code 1.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::IterationCap { .. } | Error::ResourceCap { .. } => 3,
            _ => 2,
        }
    }
}
