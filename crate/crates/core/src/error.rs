use std::fmt;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("duplicate vertex {0}")]
    DuplicateVertex(String),
    #[error("loop edge on {0}")]
    LoopEdge(String),
    #[error("duplicate edge {0}–{1}")]
    DuplicateEdge(String, String),
    /// An operation was called on input outside its domain.
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("{0}")]
    Parse(ParseError),
    #[error("graph has {n} vertices; the exhaustive oracle accepts at most {max}")]
    TooLarge { n: usize, max: usize },
    #[error("unknown graph family {0}")]
    UnknownFamily(String),
}

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}

/// One malformed line of a text document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineIssue {
    pub line: usize,
    pub reason: String,
}

/// Every malformed line found while parsing, in input order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ParseError {
    pub issues: Vec<LineIssue>,
}

impl ParseError {
    pub(crate) fn push(&mut self, line: usize, reason: impl Into<String>) {
        self.issues.push(LineIssue {
            line,
            reason: reason.into(),
        });
    }

    pub(crate) fn into_result<T>(self, value: T) -> Result<T> {
        if self.issues.is_empty() {
            Ok(value)
        } else {
            Err(Error::Parse(self))
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, issue) in self.issues.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{} at line {}", issue.reason, issue.line)?;
        }
        Ok(())
    }
}
