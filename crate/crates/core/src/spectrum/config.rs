use std::collections::BTreeSet;
use std::fmt;

use crate::graph::{SeparatedGraph, VertexId};
use crate::paths::{letters_at, Letter};

/// A nonempty set of letters leaving one vertex, with an optional tail.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LocalConfig {
    at: VertexId,
    letters: BTreeSet<Letter>,
    tail: Option<Letter>,
}

impl LocalConfig {
    /// `None` when `letters` is empty, a letter does not leave `at`, or the
    /// tail is not among the letters.
    pub fn new(graph: &SeparatedGraph, at: VertexId, letters: BTreeSet<Letter>, tail: Option<Letter>) -> Option<Self> {
        let ok = !letters.is_empty()
            && letters.iter().all(|x| x.source(graph) == at)
            && tail.map_or(true, |t| letters.contains(&t));
        ok.then_some(LocalConfig { at, letters, tail })
    }

    pub fn at(&self) -> VertexId {
        self.at
    }

    pub fn letters(&self) -> &BTreeSet<Letter> {
        &self.letters
    }

    pub fn tail(&self) -> Option<Letter> {
        self.tail
    }

    /// Letters other than the tail.
    pub fn leaves(&self) -> impl Iterator<Item = Letter> + '_ {
        self.letters.iter().copied().filter(move |x| Some(*x) != self.tail)
    }

    pub fn display<'a>(&'a self, graph: &'a SeparatedGraph) -> ConfigDisplay<'a> {
        ConfigDisplay { config: self, graph }
    }
}

pub struct ConfigDisplay<'a> {
    config: &'a LocalConfig,
    graph: &'a SeparatedGraph,
}

impl fmt::Display for ConfigDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = self.graph;
        let letters: Vec<String> = self.config.letters.iter().map(|x| x.display(g).to_string()).collect();
        write!(f, "at {} {{{}}}", g.vertex_name(self.config.at), letters.join(", "))?;
        if let Some(t) = self.config.tail {
            write!(f, " tail {}", t.display(g))?;
        }
        Ok(())
    }
}

/// No two distinct positive letters from one block.
pub fn is_admissible(graph: &SeparatedGraph, c: &LocalConfig) -> bool {
    let mut blocks = BTreeSet::new();
    c.letters.iter().filter(|x| x.is_positive()).all(|x| blocks.insert(x.block(graph)))
}

fn has_all_inverse_letters(graph: &SeparatedGraph, c: &LocalConfig) -> bool {
    graph.in_edges(c.at).iter().all(|&e| c.letters.contains(&Letter::inverse_of(e)))
}

fn covers_blocks(graph: &SeparatedGraph, c: &LocalConfig, finite_only: bool) -> bool {
    graph
        .blocks_at(c.at)
        .iter()
        .filter(|&&b| !finite_only || graph.block(b).is_finite())
        .all(|&b| c.letters.iter().any(|x| x.is_positive() && x.block(graph) == b))
}

/// Admissible, one positive letter in every block at the vertex, and every
/// inverse letter of an edge ending there. Blocks flagged infinite are
/// judged by their named edges only.
pub fn is_maximal_config(graph: &SeparatedGraph, c: &LocalConfig) -> bool {
    is_admissible(graph, c) && covers_blocks(graph, c, false) && has_all_inverse_letters(graph, c)
}

/// As [`is_maximal_config`] but only finite blocks must be met.
pub fn is_finite_maximal_config(graph: &SeparatedGraph, c: &LocalConfig) -> bool {
    is_admissible(graph, c) && covers_blocks(graph, c, true) && has_all_inverse_letters(graph, c)
}

/// Every local configuration at `v` (without tail), in subset order.
/// Panics above 20 letters.
pub fn configurations_at(graph: &SeparatedGraph, v: VertexId) -> Vec<LocalConfig> {
    let letters = letters_at(graph, v);
    assert!(letters.len() <= 20, "too many letters at one vertex for exhaustive listing");
    (1u32..(1 << letters.len()))
        .map(|mask| LocalConfig {
            at: v,
            letters: letters.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, x)| *x).collect(),
            tail: None,
        })
        .collect()
}
