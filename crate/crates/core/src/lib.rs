//! Clique minors from Kempe colorings and unique colorings.
//!
//! Graphs have at most 64 vertices and are stored as adjacency bitmasks. Every
//! construction validates its own output, and exhaustive oracles for the
//! Hadwiger number, the shallow clique minor number and rooted minors are
//! provided to cross-check them.

pub mod budget;
pub mod coloring;
pub mod enumerate;
pub mod connectivity;
pub mod error;
pub mod generators;
pub mod graph;
pub mod harness;
pub mod matching;
pub mod minors;

pub use budget::Budget;
pub use coloring::{Coloring, Transversal};
pub use error::{Error, Result};
pub use graph::{Edge, Graph, VertexSet};
pub use matching::{DecompStep, Matching};
pub use minors::{CliqueMinor, MinorDefect, SearchConfig};
