//! Prefix and twisted prefix graded graphs of nonsymmetric operads.
//!
//! Free operads are modelled by decorated planar trees ([`tree`]), concrete
//! operads by words ([`operads`]). Both feed the generic graded-graph layer
//! ([`graded_graph`]), which computes hook series, path counts and duality
//! commutators with exact integers.

pub mod alphabet;
pub mod cli;
pub mod error;
pub mod free_graphs;
pub mod graded_graph;
pub mod operads;
pub mod poly;
pub mod series;
pub mod tree;
pub mod tree_poset;

pub use alphabet::{Alphabet, Letter};
pub use error::{Error, Result};
pub use poly::{Combination, Element, Poly};
pub use tree::{NodeAddress, SyntaxTree};
