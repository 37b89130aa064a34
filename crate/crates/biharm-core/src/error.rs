//! Error type shared by the exact and numerical halves of the crate.

use alloc::string::String;
use core::fmt;

/// Everything that can go wrong, from degenerate exact inputs to
/// ill-conditioned charts.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Leading coefficient of a quadratic is zero.
    DegenerateQuadratic,
    /// Arithmetic would mix two distinct irrational radicands.
    MixedRadicands,
    /// An interval comparison could not separate the operands at the
    /// certified width.
    UndecidedComparison,
    /// Square root of a negative exact quantity.
    NegativeRadicand,
    /// Evaluation left the domain of an expression (division by zero,
    /// square root of a negative value).
    Domain(String),
    /// Inconsistent parameters handed to a catalog builder.
    Build(String),
    /// The induced metric is numerically singular at the requested point.
    SingularMetric { cond: f64 },
    /// A jet of higher order than available was requested.
    Order { needed: usize, available: usize },
    /// An operation requires a specific source dimension.
    Dimension { expected: usize, got: usize },
    /// A stated precondition of an operation does not hold.
    Precondition(String),
    /// A sample plan with no points was requested.
    EmptyPlan,
    /// A non-finite value appeared where a finite one is required.
    NonFinite(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DegenerateQuadratic => write!(f, "leading coefficient is zero"),
            Error::MixedRadicands => write!(f, "operands carry different radicands"),
            Error::UndecidedComparison => {
                write!(f, "comparison undecided at certified interval width")
            }
            Error::NegativeRadicand => write!(f, "radicand is negative"),
            Error::Domain(what) => write!(f, "domain error: {what}"),
            Error::Build(what) => write!(f, "build error: {what}"),
            Error::SingularMetric { cond } => {
                write!(f, "induced metric is singular (condition number {cond:e})")
            }
            Error::Order { needed, available } => {
                write!(f, "jet order {needed} needed but only {available} available")
            }
            Error::Dimension { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            Error::Precondition(what) => write!(f, "precondition violated: {what}"),
            Error::EmptyPlan => write!(f, "sample plan must contain at least one point"),
            Error::NonFinite(what) => write!(f, "non-finite value: {what}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
