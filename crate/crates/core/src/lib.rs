//! Strong arc decompositions of semicomplete compositions.
//!
//! A strong arc decomposition of a digraph splits its arcs into two sets
//! whose spanning subdigraphs are both strongly connected. This crate decides
//! existence for semicomplete compositions (quasi-transitive digraphs among
//! them) and semicomplete multigraphs. It builds a decomposition when one
//! exists and returns a checkable certificate otherwise.

pub mod branchings;
pub mod composition;
pub mod connectivity;
pub mod decompose;
pub mod digraph;
mod dominators;
pub mod error;
pub mod gallery;
pub mod generate;
pub mod io;
pub mod iso;
pub mod oracle;
pub mod structure;

pub use composition::{compose, extension, CompositionStructure};
pub use decompose::{decompose, verify_decomposition, DecomposeOutcome, Decomposition};

pub use digraph::{Arc, Digraph, DigraphBuilder, VertexId};
pub use error::{Error, Result};
pub use gallery::ExceptionKind;
