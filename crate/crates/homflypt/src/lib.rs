//! HOMFLY-PT polynomials of oriented link diagrams, the degree bounds they
//! impose on diagram complexity, and constructive sharpness certificates for
//! positive diagrams.
//!
//! The crate computes the polynomial two independent ways (a plain
//! descending-resolution engine and a castle-guided coherent-tree engine),
//! evaluates the upper/left/right degree inequalities and the crossing and
//! braid-index bounds derived from them, and decides constructively whether
//! a positive diagram realizes the right bound by producing a replayable
//! script of shackle moves, crossing doublings, and Artin moves from a
//! zero-crossing diagram, or a non-sharpness certificate.

pub mod bounds;
pub mod castle;
pub mod corpus;
pub mod decompose;
pub mod diagram;
pub mod poly;
pub mod resolve;
pub mod seifert;
pub mod selftest;

use thiserror::Error as ThisError;

#[derive(Debug, ThisError)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("non-spherical embedding (V - E + F = {euler})")]
    NonSpherical { euler: i64 },
    #[error("empty diagram")]
    EmptyDiagram,
    #[error("malformed diagram: {0}")]
    Malformed(String),
    #[error("unknown crossing {0}")]
    UnknownCrossing(usize),
    #[error("point is not on an innermost Seifert circle")]
    NotInnermost,
    #[error("diagram is not positive")]
    NotPositive,
    #[error("degrees of the zero polynomial are undefined")]
    DegreesOfZero,
    #[error("site does not match the move pattern: {0}")]
    PatternMismatch(String),
    #[error("move script is invalid at step {step}: {reason}")]
    BadScript { step: usize, reason: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no appropriate point found; this contradicts the trap-free point guarantee")]
    LemmaViolation,
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub use diagram::braid::{closure, parse_braid};
pub use diagram::canon::{canonical_code, canonical_form, diagrams_isomorphic};
pub use diagram::pd::{parse_pd, serialize_pd};
pub use diagram::{LinkDiagram, Point, Sign};
pub use poly::LaurentPoly2;
