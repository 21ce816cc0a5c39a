//! Rational group rings `ℚH` over computable groups, matrices over them, and
//! the Kaplansky, augmentation and Hattori–Stallings traces.

mod corpus;
mod element;
mod matrix;
mod trace;

pub use corpus::{
    conjugated_diagonal, idempotent_corpus, random_invertible, random_ring_element,
    trace_properties, CorpusEntry, TraceProperties,
};
pub use element::{format_rational, parse_rational, parse_ring_element, RingElement};
pub use matrix::RingMatrix;
pub use trace::{
    hattori_stallings, torsion_idempotent, trace_audit, ClassFunction, TraceReport, TraceSummary,
};

use thiserror::Error;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum RingError {
    #[error("operands live over different groups")]
    GroupMismatch,
    #[error("matrix sizes differ: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("matrix rows must all have length equal to the row count")]
    NotSquare,
    #[error("matrix is not idempotent")]
    NotIdempotent,
    #[error("conjugacy classes are not computable in this group")]
    ConjugacyUnsupported,
    #[error("{n} is not the order of the given element")]
    NotOrder { n: u64 },
    #[error("ring element syntax: {0}")]
    Parse(String),
}
