//! Interval-valued q-rung orthopair fuzzy arithmetic and aggregation.
//!
//! The crate provides, bottom-up:
//!
//! - [`number`]: the fuzzy-number type, validation, hesitancy, the algebraic
//!   (probabilistic) operations, score/accuracy and the comparison rule.
//! - [`hamacher`]: the Hamacher t-norm family on scalars and fuzzy numbers.
//! - [`heronian`]: Heronian-mean aggregation operators built on the Hamacher
//!   operations, in closed form.
//! - [`oracle`]: a brute-force fold evaluator for the same operators, used to
//!   cross-check the closed forms at runtime and in tests.
//! - [`mcgdm`]: the multi-expert, multi-criteria decision pipeline.
//! - [`io`]: the JSON problem-file format, report emission, parameter sweeps.
//! - [`selfcheck`]: seeded randomized suites wiring the oracle against the
//!   closed forms; reachable from the CLI.
//!
//! All evaluation is deterministic: identical inputs produce bit-identical
//! results, and the randomized suites are reproducible from their seed.

// `!(a <= b)` guards are deliberate: they reject NaN along with the
// out-of-order case, which the suggested `a > b` would let through.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod hamacher;
pub mod heronian;
pub mod io;
pub mod mcgdm;
pub mod number;
pub mod oracle;
pub mod params;
pub mod selfcheck;

pub use error::{Error, Result};
pub use number::{compare, IvqRofn};
pub use params::{AggParams, ScoreKind, WeightVector};
