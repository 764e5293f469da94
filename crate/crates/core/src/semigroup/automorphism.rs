//! Automorphisms of a separated graph and the induced maps on elements.

use std::collections::BTreeSet;
use std::fmt;

use crate::budget::{Budget, BudgetExceeded};
use crate::graph::{EdgeId, SeparatedGraph, VertexId};
use crate::paths::{Letter, ReducedPath};
use crate::semilattice::PathTree;

use super::{Element, MunnTree};

/// A pair of bijections on vertices and edges preserving source, range and
/// the separation (blocks go to blocks of the same cardinality flag).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Automorphism {
    vertices: Vec<VertexId>,
    edges: Vec<EdgeId>,
}

impl Automorphism {
    pub fn vertex(&self, v: VertexId) -> VertexId {
        self.vertices[v.index()]
    }

    pub fn edge(&self, e: EdgeId) -> EdgeId {
        self.edges[e.index()]
    }

    pub fn is_identity(&self) -> bool {
        self.vertices.iter().enumerate().all(|(i, v)| v.index() == i)
            && self.edges.iter().enumerate().all(|(i, e)| e.index() == i)
    }

    pub fn letter(&self, x: Letter) -> Letter {
        Letter { direction: x.direction, edge: self.edge(x.edge) }
    }

    pub fn path(&self, graph: &SeparatedGraph, p: &ReducedPath) -> ReducedPath {
        let letters = p.letters().iter().map(|&x| self.letter(x)).collect();
        ReducedPath::from_letters(graph, self.vertex(p.source()), letters)
            .expect("automorphisms preserve reduced paths")
    }

    pub fn tree(&self, graph: &SeparatedGraph, t: &PathTree) -> PathTree {
        let paths: BTreeSet<ReducedPath> = t.iter().map(|p| self.path(graph, p)).collect();
        PathTree::from_set(graph, self.vertex(t.base()), paths).expect("automorphisms preserve lower sets")
    }

    pub fn display<'a>(&'a self, graph: &'a SeparatedGraph) -> AutomorphismDisplay<'a> {
        AutomorphismDisplay { map: self, graph }
    }
}

pub struct AutomorphismDisplay<'a> {
    map: &'a Automorphism,
    graph: &'a SeparatedGraph,
}

impl fmt::Display for AutomorphismDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = self.graph;
        let vs: Vec<String> = g
            .vertices()
            .map(|v| format!("{}->{}", g.vertex_name(v), g.vertex_name(self.map.vertex(v))))
            .collect();
        let es: Vec<String> = g
            .edge_ids()
            .map(|e| format!("{}->{}", g.edge_name(e), g.edge_name(self.map.edge(e))))
            .collect();
        write!(f, "vertices [{}] edges [{}]", vs.join(", "), es.join(", "))
    }
}

/// Brute force over vertex bijections, then over compatible edge bijections,
/// keeping those that carry blocks onto blocks.
pub fn enumerate_automorphisms(graph: &SeparatedGraph, budget: &mut Budget) -> Result<Vec<Automorphism>, BudgetExceeded> {
    let n = graph.vertex_count();
    let mut search = Search {
        graph,
        budget,
        vertices: Vec::with_capacity(n),
        vertex_used: vec![false; n],
        edges: Vec::with_capacity(graph.edge_count()),
        edge_used: vec![false; graph.edge_count()],
        found: Vec::new(),
    };
    search.vertices_step()?;
    Ok(search.found)
}

struct Search<'a> {
    graph: &'a SeparatedGraph,
    budget: &'a mut Budget,
    vertices: Vec<VertexId>,
    vertex_used: Vec<bool>,
    edges: Vec<EdgeId>,
    edge_used: Vec<bool>,
    found: Vec<Automorphism>,
}

impl Search<'_> {
    fn vertices_step(&mut self) -> Result<(), BudgetExceeded> {
        self.budget.tick()?;
        let g = self.graph;
        let i = self.vertices.len();
        if i == g.vertex_count() {
            return self.edges_step();
        }
        let v = VertexId(i as u32);
        for w in g.vertices() {
            if self.vertex_used[w.index()]
                || g.out_edges(v).len() != g.out_edges(w).len()
                || g.in_edges(v).len() != g.in_edges(w).len()
                || g.blocks_at(v).len() != g.blocks_at(w).len()
            {
                continue;
            }
            self.vertex_used[w.index()] = true;
            self.vertices.push(w);
            self.vertices_step()?;
            self.vertices.pop();
            self.vertex_used[w.index()] = false;
        }
        Ok(())
    }

    fn edges_step(&mut self) -> Result<(), BudgetExceeded> {
        self.budget.tick()?;
        let g = self.graph;
        let i = self.edges.len();
        if i == g.edge_count() {
            if self.preserves_blocks() {
                self.found.push(Automorphism { vertices: self.vertices.clone(), edges: self.edges.clone() });
            }
            return Ok(());
        }
        let e = EdgeId(i as u32);
        let (s, r) = (self.vertices[g.source(e).index()], self.vertices[g.range(e).index()]);
        for &f in g.out_edges(s) {
            if self.edge_used[f.index()] || g.range(f) != r {
                continue;
            }
            self.edge_used[f.index()] = true;
            self.edges.push(f);
            self.edges_step()?;
            self.edges.pop();
            self.edge_used[f.index()] = false;
        }
        Ok(())
    }

    fn preserves_blocks(&self) -> bool {
        let g = self.graph;
        g.blocks().iter().all(|block| {
            let image: BTreeSet<EdgeId> = block.edges.iter().map(|e| self.edges[e.index()]).collect();
            let target = g.block(g.block_of(*image.iter().next().expect("blocks are nonempty")));
            target.cardinality == block.cardinality
                && target.edges.len() == image.len()
                && target.edges.iter().all(|e| image.contains(e))
        })
    }
}

/// The induced map on elements: relabel every letter of the tree and carrier.
pub fn apply_automorphism(graph: &SeparatedGraph, phi: &Automorphism, a: &Element) -> Element {
    match a {
        Element::Zero => Element::Zero,
        Element::Nonzero(m) => Element::Nonzero(MunnTree {
            carrier: phi.path(graph, &m.carrier),
            tree: phi.tree(graph, &m.tree),
            level: m.level,
        }),
    }
}
