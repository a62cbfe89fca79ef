//! Take-Away game on hypergraphs.
//!
//! A move removes one vertex (and every hyperedge containing it) or one
//! hyperedge; whoever removes the last vertex wins. This crate holds the
//! position model, an exact Grundy-value oracle, the structural classifier
//! for mixed even-edge/3-edge instances, closed-form value predictions, and
//! an exhaustive verifier that checks the predictions against the oracle.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;

pub mod canon;
pub mod classify;
pub mod closed_form;
pub mod enumerate;
pub mod grundy;
pub mod position;

pub use canon::{canonical_key, iso_canonical_key, SizeBoundExceeded};
pub use classify::{check_lemmas, classify, Group, Lemma, LemmaCheck, StructureReport, Subcategory, Violation};
pub use closed_form::{predict, Prediction, PredictionSource};
pub use enumerate::{enumerate_instances, verify, EnumerationBounds, Outcome, Summary, VerificationRecord};
pub use grundy::{grundy, grundy_value, mex, winning_moves, GrundyResult, SearchConfig, SearchError, TranspositionTable};
pub use position::{Hyperedge, IllegalMove, Instance, Labels, Move, Position, PositionError, VertexId, VertexSet};
