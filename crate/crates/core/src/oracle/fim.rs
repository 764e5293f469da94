//! Textbook Munn trees for free inverse monoids, and the embedding of a free
//! inverse monoid into the inverse semigroup of the graph `FIM_n`.
//!
//! The Munn-tree half of this module uses no separated-graph code at all:
//! a word over generators `x_1 .. x_n` and their inverses is traced through
//! the Cayley graph of the free group.

use std::collections::BTreeSet;

use crate::graph::SeparatedGraph;
use crate::paths::{Letter, Token};
use crate::semigroup::{Element, Semigroup};

/// A generator of the free inverse monoid, possibly inverted.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FimLetter {
    pub generator: usize,
    pub inverted: bool,
}

impl FimLetter {
    pub fn new(generator: usize, inverted: bool) -> Self {
        FimLetter { generator, inverted }
    }

    pub fn inverse(self) -> Self {
        FimLetter { inverted: !self.inverted, ..self }
    }
}

/// Parses `x1 ~x2 x1` style words; the empty string is the identity.
pub fn parse_fim_word(text: &str) -> Option<Vec<FimLetter>> {
    text.split_whitespace()
        .map(|tok| {
            let (inverted, rest) = match tok.strip_prefix('~') {
                Some(r) => (true, r),
                None => (false, tok),
            };
            let n: usize = rest.strip_prefix('x')?.parse().ok()?;
            (n >= 1).then(|| FimLetter::new(n - 1, inverted))
        })
        .collect()
}

/// The Munn tree of a word: vertex set of the traced subtree of the Cayley
/// graph (as reduced words) and the end point.
pub type FimMunnTree = (BTreeSet<Vec<FimLetter>>, Vec<FimLetter>);

pub fn fim_munn_tree(word: &[FimLetter]) -> FimMunnTree {
    let mut here: Vec<FimLetter> = Vec::new();
    let mut tree = BTreeSet::new();
    tree.insert(here.clone());
    for &x in word {
        if here.last() == Some(&x.inverse()) {
            here.pop();
        } else {
            here.push(x);
        }
        tree.insert(here.clone());
    }
    (tree, here)
}

pub fn fim_munn_eq(w1: &[FimLetter], w2: &[FimLetter]) -> bool {
    fim_munn_tree(w1) == fim_munn_tree(w2)
}

/// Substitutes `x ↦ e_x f_x⁻¹` and `x⁻¹ ↦ f_x e_x⁻¹` and evaluates in the
/// separated inverse semigroup of `graph`, which must contain vertices and
/// edges named as in `fim_graph`. The empty word maps to the base vertex `v`.
pub fn phi_embed(graph: &SeparatedGraph, word: &[FimLetter]) -> Element {
    let s = Semigroup::separated(graph);
    let edge = |prefix: char, i: usize| {
        graph
            .edge_by_name(&format!("{prefix}{}", i + 1))
            .unwrap_or_else(|| panic!("graph has no edge {prefix}{}", i + 1))
    };
    let mut tokens = Vec::with_capacity(2 * word.len() + 1);
    if word.is_empty() {
        tokens.push(Token::Vertex(graph.vertex_by_name("v").expect("graph has a vertex v")));
    }
    for x in word {
        let (e, f) = (edge('e', x.generator), edge('f', x.generator));
        let (a, b) = if x.inverted {
            (Letter::positive(f), Letter::inverse_of(e))
        } else {
            (Letter::positive(e), Letter::inverse_of(f))
        };
        tokens.push(Token::Letter(a));
        tokens.push(Token::Letter(b));
    }
    s.evaluate(&tokens)
}

/// Every word of length at most `max_len` over `n` generators.
pub fn all_fim_words(n: usize, max_len: usize) -> Vec<Vec<FimLetter>> {
    let letters: Vec<FimLetter> = (0..n).flat_map(|g| [FimLetter::new(g, false), FimLetter::new(g, true)]).collect();
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w: &Vec<FimLetter>| {
                letters.iter().map(move |&x| {
                    let mut v = w.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}
