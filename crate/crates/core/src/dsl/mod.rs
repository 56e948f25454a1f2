//! The `.hpd` declaration language.

pub mod ast;
mod lexer;
mod parser;
mod print;
mod validate;

use std::fmt;

use serde::Serialize;

pub use parser::{parse, parse_poly};
pub use print::print_canonical;
pub use validate::{load, validate, ValidateOptions};

use crate::error::Error;

/// 1-based source position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Span {
    pub line: usize,
    pub col: usize,
}

impl Span {
    pub fn new(line: usize, col: usize) -> Self {
        Self { line, col }
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorKind {
    Syntax,
    UnknownCheck,
    Duplicate,
    UnknownSymbol,
    UnknownCategory,
    NonModerate,
    LeftRightMismatch,
    ConflictingIntersection,
    AmbientMismatch,
    MissingDisjointness,
    InvalidArgument,
}

impl fmt::Display for ErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ErrorKind::Syntax => "syntax error",
            ErrorKind::UnknownCheck => "unknown check",
            ErrorKind::Duplicate => "duplicate declaration",
            ErrorKind::UnknownSymbol => "unknown symbol",
            ErrorKind::UnknownCategory => "unknown category",
            ErrorKind::NonModerate => "non-moderate category",
            ErrorKind::LeftRightMismatch => "left/right mismatch",
            ErrorKind::ConflictingIntersection => "conflicting intersection",
            ErrorKind::AmbientMismatch => "ambient mismatch",
            ErrorKind::MissingDisjointness => "missing disjointness",
            ErrorKind::InvalidArgument => "invalid argument",
        };
        f.write_str(s)
    }
}

/// A diagnostic; every one carries the position it refers to.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{span}: {kind}: {message}")]
pub struct DslError {
    pub kind: ErrorKind,
    pub span: Span,
    pub message: String,
}

impl DslError {
    pub fn new(kind: ErrorKind, span: Span, message: String) -> Self {
        Self {
            kind,
            span,
            message,
        }
    }

    /// Attaches a position to a model error.
    pub fn from_model(err: Error, span: Span) -> Self {
        let kind = match &err {
            Error::NonModerate { .. } | Error::JoinNotModerate { .. } => ErrorKind::NonModerate,
            Error::LeftRightMismatch { .. } => ErrorKind::LeftRightMismatch,
            Error::AmbientMismatch { .. } => ErrorKind::AmbientMismatch,
            Error::MissingDisjointness(_) => ErrorKind::MissingDisjointness,
            Error::UnknownCategory(_) => ErrorKind::UnknownCategory,
            Error::UnknownSymbol(_) => ErrorKind::UnknownSymbol,
            Error::DuplicateDeclaration(_) => ErrorKind::Duplicate,
            Error::ConflictingIntersection { .. } | Error::ConflictingHyperplaneTotal { .. } => {
                ErrorKind::ConflictingIntersection
            }
            Error::UnresolvedIntersection(..)
            | Error::UnresolvedBaseLocus(_)
            | Error::Underdetermined(_)
            | Error::InvalidArgument(_) => ErrorKind::InvalidArgument,
        };
        Self::new(kind, span, err.to_string())
    }
}
