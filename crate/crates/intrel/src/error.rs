//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("relation size {n} exceeds the supported maximum {max}")]
    SizeTooLarge { n: usize, max: usize },

    #[error("pair ({}, {}) is out of range for a relation on [{n}]", pair.0, pair.1)]
    PairOutOfRange { n: usize, pair: (usize, usize) },

    #[error("operands have mismatched sizes {0} and {1}")]
    SizeMismatch(usize, usize),

    #[error("operands live in different carriers")]
    MixedCarrier,

    #[error("operands are expressed in different bases")]
    MixedBasis,

    #[error("integer coefficient overflow")]
    Overflow,

    #[error(
        "size {n} exceeds the enumeration limit {limit} (raise INTREL_ENUM_LIMIT to override)"
    )]
    EnumerationLimit { n: usize, limit: usize },

    #[error("relation is not a poset")]
    NotAPoset,

    #[error("relation does not belong to family {0}")]
    NotInFamily(&'static str),

    #[error("{0} is not a valid permutation word")]
    InvalidPermutation(String),

    #[error("{0} is not a valid ordered partition")]
    InvalidOrderedPartition(String),

    #[error("left operand is not below the right operand in the weak order")]
    NotWeakOrderComparable,

    #[error("left tree is not below the right tree in the Tamari order")]
    NotTamariComparable,

    #[error(
        "no quotient algebra exists on {family}: the relation 3:12,13,32 lies in the \
         convolution of 1: and 2:21, which both belong to {family}, yet 3:12,13,32 does not; \
         the coproduct therefore leaves the span. Use --style fiber-sum instead"
    )]
    TamariQuotient { family: &'static str },

    #[error("fiber-sum closure violated: residue term {0} outside the span")]
    ClosureViolation(String),

    #[error("invalid input: {0}")]
    Input(String),
}
