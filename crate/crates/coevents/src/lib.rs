//! Quantal measure theory on finite history spaces.
//!
//! A *history* is one complete fine-grained possibility; an *event* is a
//! set of histories, and the event algebra is the Boolean algebra of all
//! such sets. A quantal measure assigns every event a nonnegative
//! number, but interference makes it non-additive, so events of measure
//! zero — *precluded* events — carry the dynamical content: they never
//! happen. A *coevent* answers every event with 0 or 1; the
//! multiplicative ones are determined by a support set and affirm
//! exactly the events containing it. The preclusive coevents of minimal
//! support — the *primitive* ones — are the candidate realities.
//!
//! This crate computes all of that for spaces of up to twenty or so
//! histories, exactly when the inputs are rational:
//!
//! - [`algebra`]: history spaces, bit-vector events, partitions, and
//!   partition-generated subalgebras.
//! - [`measure`]: classical, amplitude, and decoherence-matrix measures;
//!   validation; interference terms; enumeration of all precluded events
//!   with their maximal antichain.
//! - [`coevent`]: evaluation, preclusivity, primitivity, enumeration of
//!   all primitive coevents (with a brute-force oracle), inference-rule
//!   reports, and maximal-preclusive-filter checks.
//! - [`classicality`]: restriction of coevents to coarse-grainings and
//!   the preclusive-separability conditions.
//! - [`deduction`]: a proof checker for rule-cited reasoning about
//!   coevent judgments under selectable rule profiles.
//! - [`scenario`] and [`report`]: JSON scenario/proof files, built-in
//!   examples, and the end-to-end pipeline with deterministic reports.
//!
//! The `coevents` binary exposes the pipeline as subcommands; the
//! crate's `examples/` directory walks through each capability.

pub mod algebra;
pub mod classicality;
pub mod cli;
pub mod coevent;
pub mod deduction;
pub mod error;
pub mod measure;
pub mod report;
pub mod scalar;
pub mod scenario;

pub use algebra::{Event, HistorySpace, Partition, Subalgebra};
pub use classicality::Bipartition;
pub use coevent::{brute_force_primitives, enumerate_primitives, Coevent, PrimitiveSet};
pub use deduction::{check_proof, Proof, SchemeProfile};
pub use error::{Error, Result};
pub use measure::{MeasureSpec, NullStructure, Tolerance};
pub use scalar::{ComplexScalar, NumericMode, Scalar};
pub use scenario::Scenario;
