//! Minimal generators of the diagonal ideal.
//!
//! The ideal `I ⊂ ℚ[x, y]` generated by the bivariate alternants `Δ(D)` is
//! bigraded, and so is `M = I/(x,y)I`. This crate computes the bigraded
//! dimensions of `M` by sparse elimination in the `Δ(D)` basis, evaluates
//! the q,t-Catalan statistics they are compared with, and checks the
//! relations that move one diagram to another modulo `(x,y)I`.

pub mod alternants;
pub mod cache;
pub mod diagrams;
pub mod echelon;
pub mod error;
pub mod field;
pub mod generators;
pub mod graded_module;
pub mod lemma_engine;
pub mod poly_expand;
pub mod qt_catalan;

pub use alternants::AltVector;
pub use diagrams::{Diagram, PartitionType, Point};
pub use error::{Error, Result};
pub use graded_module::{Backend, EngineConfig, GradedModule, ModuleSlice, SliceMode};
