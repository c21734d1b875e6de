//! Exact computations on the Hawaiian earring `HE`, the union of the circles
//! of radius `1/n` centred at `(1/n, 0)`.
//!
//! * [`words`]: free-group words over `x_1, x_2, ...` and free reduction.
//! * [`limits`]: images of words in the tower of free groups `F_1 ← F_2 ← ...`.
//! * [`loops`]: combinatorial based loops, their evaluation and the uniform
//!   distance between them.
//! * [`oscillation`]: the oscillation numbers `O_n` with witness time sets.
//! * [`witness`]: the loop families `a(n,k)`, `w(n,k)` and the evidence
//!   reports showing that multiplication on `π₁(HE, p)` with the quotient
//!   topology is not continuous.
//!
//! The guide in `book/` walks through each of these with runnable snippets.

pub mod cli;
pub mod error;
pub mod limits;
pub mod loops;
pub mod oscillation;
pub mod report;
pub mod witness;
pub mod words;

pub use error::{Error, Result};
pub use limits::{phi, project, CoherentSequence};
pub use loops::{sup_distance, CombLoop, HePoint, Move, PaddedWord, Time};
pub use oscillation::{oscillation, verify_witness, WitnessSet};
pub use report::EvidenceReport;
pub use words::{Letter, Sign, Word};
