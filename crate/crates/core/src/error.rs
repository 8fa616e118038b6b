//! Crate-wide error type.
//!
//! Every fallible public operation returns [`Result`]. Variants carry a
//! human-readable message; [`Error::code`] exposes a stable machine-readable
//! tag for front ends that need to map failures onto exit codes or JSON.

use thiserror::Error;

/// Errors produced by shape validation, generators, and search refusals.
#[derive(Debug, Error)]
pub enum Error {
    /// A host shape, pattern, or embedding is structurally malformed.
    #[error("invalid shape: {0}")]
    InvalidShape(String),

    /// A square matrix fails the Latin property (row/column repeats, bad dims).
    #[error("not a latin square: {0}")]
    NotLatin(String),

    /// A probability or threshold formula was asked for parameters where a
    /// factor in the denominator is non-positive.
    #[error("degenerate dimensions: {0}")]
    DegenerateDims(String),

    /// An exhaustive enumeration or search was refused because its estimated
    /// size exceeds the configured limit.
    #[error("too large: {0}")]
    TooLarge(String),

    /// A pattern part does not fit inside the host part it must map into.
    #[error("part overflow: {0}")]
    PartOverflow(String),

    /// Projective-plane order that is not a prime.
    #[error("not prime: {0}")]
    NotPrime(u64),

    /// Parameters outside the range a generator supports.
    #[error("unsupported parameters: {0}")]
    UnsupportedParameters(String),

    /// A divisibility precondition on the parameters fails.
    #[error("divisibility: {0}")]
    Divisibility(String),

    /// Malformed textual or JSON input.
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable kebab-case tag identifying the error class.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidShape(_) => "invalid-shape",
            Error::NotLatin(_) => "not-latin",
            Error::DegenerateDims(_) => "degenerate-dims",
            Error::TooLarge(_) => "too-large",
            Error::PartOverflow(_) => "part-overflow",
            Error::NotPrime(_) => "not-prime",
            Error::UnsupportedParameters(_) => "unsupported-parameters",
            Error::Divisibility(_) => "divisibility",
            Error::Parse(_) => "parse-error",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn codes_are_stable() {
        assert_eq!(Error::NotPrime(6).code(), "not-prime");
        assert_eq!(Error::NotLatin("dup".into()).code(), "not-latin");
        assert_eq!(Error::TooLarge("10^12 nodes".into()).code(), "too-large");
    }

    #[test]
    fn display_includes_message() {
        let e = Error::PartOverflow("part 2 needs 14 > 12".into());
        assert_eq!(e.to_string(), "part overflow: part 2 needs 14 > 12");
    }
}
