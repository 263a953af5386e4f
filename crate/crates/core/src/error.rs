use thiserror::Error;

/// Errors produced by the library.
///
/// The variants map one-to-one onto the exit codes of the command-line tool:
/// `Input`/`Parse` are malformed input, `Resource` is an exceeded guard and
/// `NotInFan`/`Precondition` are violated domain preconditions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("resource limit exceeded: {what} (limit {limit})")]
    Resource { what: &'static str, limit: u64 },

    /// A weight vector is not in the Bergman fan. `circuit` is a circuit on
    /// which `element` is the unique maximum.
    #[error("not an M-ultrametric: {element} is the unique maximum on circuit {{{}}}", .circuit.join(", "))]
    NotInFan { element: String, circuit: Vec<String> },

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}
