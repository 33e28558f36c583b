//! Dictionaries as definition graphs.
//!
//! A dictionary maps every word to the set of words in its definition. Its
//! graph has an arc `u -> v` whenever `u` is used to define `v`. On that
//! graph this crate computes which words can be learned from a set of known
//! words, the grounding kernel left after peeling off words no definition
//! needs, the level of every word, and minimum grounding sets.
//!
//! ```
//! use groundkernel::{kernel::grounding_kernel, DefGraph, Dictionary};
//!
//! let dict: Dictionary = "good: not bad\nbad: not good\nnot: not\nnice: good\n"
//!     .parse()
//!     .unwrap();
//! let g = DefGraph::from_dictionary(&dict);
//! let k = grounding_kernel(&g);
//! assert_eq!(g.names(&k.kernel), ["bad", "good", "not"]);
//! ```

pub mod digraph;
pub mod error;
pub mod kernel;
pub mod lexicon;
pub mod mgs;
pub mod reachability;

#[cfg(test)]
mod testutil;

pub use digraph::{DefGraph, SccDecomposition, Vertex};
pub use error::{Error, Result};
pub use kernel::KernelResult;
pub use lexicon::{Dictionary, RawEntries, ValidationReport, Word};
pub use mgs::{MgsConfig, MgsResult};
pub use reachability::{Percent, ReachabilityResult};
