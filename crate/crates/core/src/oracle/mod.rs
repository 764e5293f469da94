//! Independent validators: normal forms by string peeling, bounded rewriting
//! closure, and classic Munn trees for free inverse monoids.
//!
//! [`peeling`] uses only the graph and path layers, never the semilattice or
//! semigroup engine.

pub mod crosscheck;
pub mod fim;
pub mod peeling;
pub mod rewriting;

pub use crosscheck::{crosscheck, CrosscheckReport};
pub use fim::{fim_munn_eq, phi_embed, FimLetter};
pub use peeling::{peel, snf_string_algorithm, PeeledForm};
pub use rewriting::{bfs_equiv, RewriteUniverse, Verdict};
