//! Exact computations in inverse semigroups of separated graphs.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`]: separated graphs and their file format;
//! * [`paths`]: letters, reduced paths, C-separatedness and C-compatibility;
//! * [`semilattice`]: lower sets of paths and their canonical forms;
//! * [`semigroup`]: the Munn-tree engine with normal forms and automorphisms;
//! * [`spectrum`]: local configurations, filter truncations and cylinder sets;
//! * [`algebra`]: the semigroup algebra over the rationals;
//! * [`oracle`]: independent validators used for cross-checking.

pub mod algebra;
pub mod budget;
pub mod graph;
pub mod oracle;
pub mod paths;
pub mod semigroup;
pub mod semilattice;
pub mod spectrum;

pub use budget::{Budget, BudgetExceeded};
pub use graph::{parse_graph, SeparatedGraph};
pub use paths::{Letter, ReducedPath};
pub use semigroup::{Element, Level, Semigroup};
