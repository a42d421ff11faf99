//! Exact Hankel determinants of linear combinations of moments of
//! orthogonal polynomials.
//!
//! Everything here is exact arithmetic over the rationals: moments are
//! realised combinatorially from three-term recurrence data, Hankel
//! determinants of shifted-moment combinations are evaluated by two
//! independent fraction-free kernels, and the central identity expressing
//! those determinants through the orthogonal polynomials themselves is
//! verified instance by instance — including the confluent case with
//! repeated points. On top of that sit explicit closed forms for shifted
//! Motzkin and Schroeder Hankel determinants and the synthesis of the
//! order-`2^d` linear recurrence satisfied by scaled Hankel sequences of
//! eventually-constant recurrence data.
//!
//! Start with [`orthopoly::RecurrenceCoeffs`] and [`identity::verify`], or
//! read the guide in `book/` (its code snippets compile and run as this
//! crate's doc-tests).

pub mod error;
pub mod heine;
pub mod identity;
pub mod matrix;
pub mod multipoly;
pub mod orthopoly;
pub mod poly;
pub mod rational;
pub mod recurrence;
pub mod ring;
pub mod sequences;

mod book;

pub use error::{Error, Result};
pub use identity::{IdentityReport, LinearCombination, PointConfiguration};
pub use matrix::Matrix;
pub use multipoly::MultiPoly;
pub use orthopoly::{FamilyKind, MomentSequence, PolyFamily, RecurrenceCoeffs};
pub use poly::UniPoly;
pub use rational::Rat;
pub use recurrence::{RecurrenceSpec, ScaledHankelSeq, WindowRule};
pub use sequences::SequenceSpec;
