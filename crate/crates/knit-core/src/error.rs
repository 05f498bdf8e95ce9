//! Crate-wide error type.

use thiserror::Error;

use crate::report::VerificationReport;

/// Errors raised by constructors and operations.
///
/// Violations of algebraic *laws* (Jacobi, group axioms, knit conditions, ...)
/// are never errors; they are collected into a [`VerificationReport`]. Errors
/// are reserved for structurally unusable input: mismatched bases, indices out
/// of range, malformed tables.
#[derive(Debug, Error)]
pub enum Error {
    #[error("duplicate name `{0}`")]
    DuplicateName(String),

    #[error("unknown name `{0}`")]
    UnknownName(String),

    #[error("degree {degree} is not a legal {mode} degree")]
    IllegalDegree { degree: i64, mode: &'static str },

    #[error("index {index} out of range for size {size}")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("basis mismatch: {0}")]
    BasisMismatch(String),

    #[error(
        "degree-incompatible coefficient: `{from}` (degree {from_degree}) maps to \
         `{to}` (degree {to_degree}) under shift {shift}"
    )]
    DegreeIncompatible {
        from: String,
        from_degree: i64,
        to: String,
        to_degree: i64,
        shift: i64,
    },

    #[error("bracket entry ({i},{j}) stored with i > j; only the lower half-table is stored")]
    UpperHalfEntry { i: usize, j: usize },

    #[error("bracket entry ({i},{j}) appears more than once")]
    DuplicateEntry { i: usize, j: usize },

    #[error("diagonal bracket [{name},{name}] must be zero: `{name}` has even degree")]
    EvenDiagonal { name: String },

    #[error("index sets do not partition the basis: {0}")]
    NotAPartition(String),

    #[error("selected span is not a subalgebra: [{x},{y}] leaves the span")]
    NotASubalgebra { x: String, y: String },

    #[error("knitted pair fails verification ({} violations); see report", report.violations().len())]
    InvalidPair { report: VerificationReport },

    #[error("multiplication table is not square: row {row} has length {len}, expected {expected}")]
    RaggedTable { row: usize, len: usize, expected: usize },

    #[error("group order {order} exceeds the limit {limit}")]
    OrderLimitExceeded { order: usize, limit: usize },

    #[error("product order {order} exceeds the enumeration bound {bound}")]
    BoundExceeded { order: usize, bound: usize },

    #[error("subgroup intersection contains `{witness}` besides the identity")]
    IntersectionNontrivial { witness: String },

    #[error("order mismatch: |A|*|B| = {product} but |G| = {order}")]
    OrderMismatch { product: usize, order: usize },

    #[error("factorization failure: `{witness}` does not factor uniquely as a*b")]
    FactorizationFailed { witness: String },

    #[error("selected members are not closed: `{x}`*`{y}` leaves the selection")]
    NotClosed { x: String, y: String },

    #[error("map shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("assume-homomorphisms flag set, but `{which}` fails the homomorphism check")]
    NotAHomomorphism { which: &'static str },
}
