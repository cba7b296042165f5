use thiserror::Error;

/// Errors raised by graph construction, the analysis routines and the file readers.
///
/// `Domain` is kept separate from `Input` so callers can tell an undefined question
/// (tight cuts of a graph that is not matching covered) from a malformed one.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("undefined for this graph: {0}")]
    Domain(String),
    #[error("{what} is {actual}, above the cap of {cap}")]
    Resource {
        what: &'static str,
        actual: usize,
        cap: usize,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn input(message: impl Into<String>) -> Self {
        Error::Input(message.into())
    }

    pub(crate) fn domain(message: impl Into<String>) -> Self {
        Error::Domain(message.into())
    }

    pub fn check_cap(what: &'static str, actual: usize, cap: usize) -> Result<()> {
        if actual > cap {
            Err(Error::Resource { what, actual, cap })
        } else {
            Ok(())
        }
    }
}
