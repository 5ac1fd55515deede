//! Exact-integer bookkeeping for the minimal free resolution of space
//! curves.
//!
//! The crate computes, with no floating point anywhere:
//!
//! * dimension formulas for twisted bundles on projective 3-space and their
//!   restrictions to a smooth quadric ([`cohom`]);
//! * the degree/remainder sequence families with their mod-3 starred
//!   variants, genus-parametrized variants, critical values and the
//!   degree/genus schedule recursion ([`seq`]);
//! * Hilbert functions, Hilbert-numerator coefficients and expected graded
//!   Betti tables for nonspecial maximal-rank curves ([`resolution`]);
//! * the combinatorial model of one quadric specialization step (line
//!   configurations, nilpotents, nets) and its balance checks ([`horace`]);
//! * an embedded machine-readable transcription of the reference tables and
//!   case recipes, with a deterministic diff engine ([`corpus`]).

pub mod cohom;
pub mod corpus;
pub mod horace;
pub mod resolution;
pub mod seq;
pub mod sweeps;

use thiserror::Error as ThisError;

/// Errors surfaced by the library. Everything else is a plain value.
#[derive(Debug, ThisError)]
pub enum Error {
    #[error("{what}: index m={m} must be nonnegative")]
    NegativeIndex { what: &'static str, m: i64 },
    #[error("{what}: index m={m} must be at least {min}")]
    IndexTooSmall { what: &'static str, m: i64, min: i64 },
    #[error("condition counts are defined for the cotangent and tangent bundles only")]
    StructureKind,
    #[error("degree must be positive, got {d}")]
    NonPositiveDegree { d: i64 },
    #[error("no remainder fits the window for {what} at m={m}; solver invariant broken")]
    RemainderWindow { what: &'static str, m: i64 },
    #[error("curve ({d},{g}) is outside the nonspecial range d >= g+3")]
    SpecialCurve { d: i64, g: i64 },
    #[error("({d},{g}) is not in the range where the distinguished Hilbert-scheme component exists")]
    OutsideHilbertRange { d: i64, g: i64 },
    #[error("curve composition parameter out of range: {what}={v}")]
    CompositionRange { what: &'static str, v: i64 },
    #[error("Hilbert numerator of ({d},{g}) has a nonzero coefficient beyond degree m+4 (regularity violation)")]
    RegularityViolation { d: i64, g: i64 },
    #[error("sign pattern of the numerator needs homological degree > 3 for ({d},{g})")]
    ProjectiveDimension { d: i64, g: i64 },
    #[error("schedule record is corrupted: {0}")]
    ScheduleCorrupt(String),
    #[error("corpus line {line}: {msg}")]
    CorpusParse { line: usize, msg: String },
    #[error("recipe {id} is malformed: {msg}")]
    MalformedRecipe { id: String, msg: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
