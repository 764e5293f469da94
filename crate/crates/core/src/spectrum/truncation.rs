use std::collections::BTreeSet;
use std::fmt;

use rand::Rng;

use crate::graph::{SeparatedGraph, VertexId};
use crate::paths::{is_c_separated_path, Letter, ReducedPath};
use crate::semilattice::PathTree;

use super::config::{is_finite_maximal_config, is_maximal_config, LocalConfig};
use super::SpectrumError;

/// A finite compatible lower set standing in for a filter; statements about
/// it are certified for members shorter than `depth`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilterTruncation {
    tree: PathTree,
    depth: usize,
}

impl FilterTruncation {
    pub fn new(graph: &SeparatedGraph, tree: PathTree, depth: usize) -> Result<Self, SpectrumError> {
        if !tree.all_separated(graph) || !tree.is_compatible_local(graph) {
            return Err(SpectrumError::Incompatible);
        }
        Ok(FilterTruncation { tree, depth })
    }

    /// The prefix closure of `paths`, rooted at `base`.
    pub fn closure_of(graph: &SeparatedGraph, base: VertexId, paths: &[ReducedPath], depth: usize) -> Result<Self, SpectrumError> {
        let mut tree = PathTree::root(base);
        for p in paths {
            if p.source() != base {
                return Err(SpectrumError::MixedSources);
            }
            tree = tree.with_path(graph, p);
        }
        FilterTruncation::new(graph, tree, depth)
    }

    pub fn base(&self) -> VertexId {
        self.tree.base()
    }

    pub fn tree(&self) -> &PathTree {
        &self.tree
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn contains(&self, p: &ReducedPath) -> bool {
        self.tree.contains(p)
    }

    pub fn is_trivial(&self) -> bool {
        self.tree.len() == 1
    }
}

/// `Z_g = {x : g·x ∈ Z}` with tail the inverse of the last letter of `g`.
/// `Ok(None)` is the empty configuration, which only occurs at the base of a
/// trivial set.
pub fn local_config_at(graph: &SeparatedGraph, z: &FilterTruncation, g: &ReducedPath) -> Result<Option<LocalConfig>, SpectrumError> {
    if !z.contains(g) {
        return Err(SpectrumError::NotAMember(g.display(graph).to_string()));
    }
    let letters = z.tree.local_letters(graph, g);
    let tail = g.last().map(Letter::inverse);
    Ok(LocalConfig::new(graph, g.range(), letters, tail))
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum FilterKind {
    Ultra,
    Tight,
}

/// Bounded-depth evidence about a truncation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// Every member shorter than `depth` passed. `named_edges_only` is set
    /// when an infinite block was judged through its listed edges.
    Pass { depth: usize, named_edges_only: bool },
    Fail { witness: ReducedPath },
}

impl Certificate {
    pub fn is_pass(&self) -> bool {
        matches!(self, Certificate::Pass { .. })
    }

    pub fn display<'a>(&'a self, graph: &'a SeparatedGraph) -> CertificateDisplay<'a> {
        CertificateDisplay { cert: self, graph }
    }
}

pub struct CertificateDisplay<'a> {
    cert: &'a Certificate,
    graph: &'a SeparatedGraph,
}

impl fmt::Display for CertificateDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.cert {
            Certificate::Pass { depth, .. } => write!(f, "PASS depth={depth}"),
            Certificate::Fail { witness } => write!(f, "FAIL witness={}", witness.display(self.graph)),
        }
    }
}

fn check(graph: &SeparatedGraph, z: &FilterTruncation, kind: FilterKind) -> Result<Certificate, SpectrumError> {
    let base = z.base();
    if graph.isolated_vertices().contains(&base) {
        return Err(SpectrumError::IsolatedVertex(graph.vertex_name(base).to_string()));
    }
    let root = ReducedPath::vertex(base);
    if z.is_trivial() {
        return Ok(match kind {
            FilterKind::Tight if graph.infinite_sources().contains(&base) => {
                Certificate::Pass { depth: z.depth, named_edges_only: false }
            }
            _ => Certificate::Fail { witness: root },
        });
    }
    let mut named_edges_only = false;
    for g in z.tree.iter().filter(|g| g.len() < z.depth) {
        let Some(c) = local_config_at(graph, z, g)? else {
            return Ok(Certificate::Fail { witness: g.clone() });
        };
        let ok = match kind {
            FilterKind::Ultra => is_maximal_config(graph, &c),
            FilterKind::Tight => is_finite_maximal_config(graph, &c),
        };
        if !ok {
            return Ok(Certificate::Fail { witness: g.clone() });
        }
        if kind == FilterKind::Ultra {
            named_edges_only |= graph.blocks_at(c.at()).iter().any(|&b| !graph.block(b).is_finite());
        }
    }
    Ok(Certificate::Pass { depth: z.depth, named_edges_only })
}

/// Every member shorter than the depth has a maximal configuration.
pub fn check_ultra_truncation(graph: &SeparatedGraph, z: &FilterTruncation) -> Result<Certificate, SpectrumError> {
    check(graph, z, FilterKind::Ultra)
}

/// Every member shorter than the depth has a finite-maximal configuration;
/// the trivial set passes exactly at infinite sources.
pub fn check_tight_truncation(graph: &SeparatedGraph, z: &FilterTruncation) -> Result<Certificate, SpectrumError> {
    check(graph, z, FilterKind::Tight)
}

/// Members ending in an inverse letter with no positively-ending extension
/// inside the truncation. Whether they extend further out cannot be decided
/// from a finite set, so they are reported rather than rejected.
pub fn unverified_members(graph: &SeparatedGraph, z: &FilterTruncation) -> Vec<ReducedPath> {
    let extended: BTreeSet<ReducedPath> = z
        .tree
        .iter()
        .filter(|p| !p.ends_in_inverse())
        .flat_map(|p| p.prefixes(graph))
        .collect();
    z.tree.iter().filter(|p| p.ends_in_inverse() && !extended.contains(*p)).cloned().collect()
}

/// Removes members ending in an inverse letter that extend to no
/// positively-ending member.
pub fn phi_trim(graph: &SeparatedGraph, z: &FilterTruncation) -> FilterTruncation {
    let dead: BTreeSet<ReducedPath> = unverified_members(graph, z).into_iter().collect();
    let paths = z.tree.paths().iter().filter(|p| !dead.contains(*p)).cloned().collect();
    let tree = PathTree::from_set(graph, z.base(), paths).expect("removing dead ends keeps the set lower");
    FilterTruncation { tree, depth: z.depth }
}

/// Adjoins `g x₁⁻¹ … xₙ⁻¹` of length at most `depth` for every member `g`
/// and edges `xᵢ` with `g x₁⁻¹ ∉ Z`.
pub fn psi_extend(graph: &SeparatedGraph, z: &FilterTruncation, depth: usize) -> FilterTruncation {
    let mut tree = z.tree.clone();
    let mut stack: Vec<ReducedPath> = Vec::new();
    for g in z.tree.iter().filter(|g| g.len() < depth) {
        for &e in graph.in_edges(g.range()) {
            if let Some(h) = g.extend(graph, Letter::inverse_of(e)) {
                if !z.contains(&h) {
                    stack.push(h);
                }
            }
        }
    }
    while let Some(h) = stack.pop() {
        debug_assert!(is_c_separated_path(graph, &h));
        if h.len() < depth {
            for &e in graph.in_edges(h.range()) {
                if let Some(k) = h.extend(graph, Letter::inverse_of(e)) {
                    stack.push(k);
                }
            }
        }
        tree = tree.with_path(graph, &h);
    }
    FilterTruncation { tree, depth }
}

/// A random compatible lower set whose members have length at most `depth`:
/// at each node every block is met by at most one new positive letter and
/// each inverse letter is included independently.
pub fn random_truncation<R: Rng>(graph: &SeparatedGraph, base: VertexId, depth: usize, rng: &mut R) -> FilterTruncation {
    let mut paths: BTreeSet<ReducedPath> = BTreeSet::new();
    let mut frontier = vec![ReducedPath::vertex(base)];
    while let Some(p) = frontier.pop() {
        if p.len() < depth {
            let back = p.last().map(Letter::inverse);
            let at = p.range();
            for &b in graph.blocks_at(at) {
                let edges = &graph.block(b).edges;
                if back.is_some_and(|t| t.is_positive() && graph.block_of(t.edge) == b) || rng.gen_bool(0.25) {
                    continue;
                }
                let e = edges[rng.gen_range(0..edges.len())];
                frontier.push(p.extend(graph, Letter::positive(e)).expect("fresh block gives a reduced path"));
            }
            for &e in graph.in_edges(at) {
                let x = Letter::inverse_of(e);
                if Some(x) != back && rng.gen_bool(0.5) {
                    frontier.push(p.extend(graph, x).expect("not the back letter"));
                }
            }
        }
        paths.insert(p);
    }
    let tree = PathTree::from_set(graph, base, paths).expect("grown from the root");
    FilterTruncation::new(graph, tree, depth).expect("locally admissible by construction")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{builtin, parse_graph};
    use crate::paths::parse_path;
    use rand::SeedableRng;

    fn trunc(graph: &SeparatedGraph, paths: &[&str], depth: usize) -> FilterTruncation {
        let ps: Vec<ReducedPath> = paths.iter().map(|p| parse_path(graph, p).unwrap()).collect();
        FilterTruncation::closure_of(graph, graph.vertex_by_name("v").unwrap(), &ps, depth).unwrap()
    }

    #[test]
    fn configurations_of_members() {
        let g = builtin::rose2_free();
        let z = trunc(&g, &["e f"], 3);
        let c = local_config_at(&g, &z, &parse_path(&g, "e").unwrap()).unwrap().unwrap();
        assert_eq!(c.display(&g).to_string(), "at v {f, ~e} tail ~e");
        assert!(local_config_at(&g, &z, &parse_path(&g, "f").unwrap()).is_err());

        let fim = builtin::fim2();
        let z = trunc(&fim, &["e1"], 2);
        let c = local_config_at(&fim, &z, &parse_path(&fim, "e1").unwrap()).unwrap().unwrap();
        assert_eq!(c.letters().len(), 1);
        assert_eq!(c.tail().unwrap().display(&fim).to_string(), "~e1");
        let root = trunc(&fim, &[], 2);
        assert!(local_config_at(&fim, &root, &ReducedPath::vertex(root.base())).unwrap().is_none());
    }

    fn full_tree(graph: &SeparatedGraph, depth: usize) -> FilterTruncation {
        // one positive letter per block (the first), every inverse letter
        let v = graph.vertex_by_name("v").unwrap();
        let mut paths = vec![ReducedPath::vertex(v)];
        let mut i = 0;
        while i < paths.len() {
            let p = paths[i].clone();
            i += 1;
            if p.len() >= depth {
                continue;
            }
            let back = p.last().map(Letter::inverse);
            for &b in graph.blocks_at(p.range()) {
                if back.is_some_and(|t| t.is_positive() && graph.block_of(t.edge) == b) {
                    continue;
                }
                paths.push(p.extend(graph, Letter::positive(graph.block(b).edges[0])).unwrap());
            }
            for &e in graph.in_edges(p.range()) {
                if let Some(q) = p.extend(graph, Letter::inverse_of(e)) {
                    paths.push(q);
                }
            }
        }
        FilterTruncation::closure_of(graph, v, &paths, depth).unwrap()
    }

    #[test]
    fn certificates() {
        let g = builtin::rose2_free();
        let z = full_tree(&g, 3);
        assert_eq!(check_ultra_truncation(&g, &z).unwrap().display(&g).to_string(), "PASS depth=3");
        let fim = builtin::fim2();
        let root = trunc(&fim, &[], 1);
        assert_eq!(check_ultra_truncation(&fim, &root).unwrap().display(&fim).to_string(), "FAIL witness=v");
        assert!(!check_tight_truncation(&fim, &root).unwrap().is_pass());

        let inf = parse_graph("vertex v\nvertex w\nedge e v w\nblock X infinite e\n").unwrap();
        let z = trunc(&inf, &[], 1);
        assert!(check_tight_truncation(&inf, &z).unwrap().is_pass());
        assert!(!check_ultra_truncation(&inf, &z).unwrap().is_pass());
    }

    #[test]
    fn trim_and_extend() {
        let fim = builtin::fim2();
        let z = trunc(&fim, &["e1"], 3);
        let ext = psi_extend(&fim, &z, 3);
        assert!(ext.contains(&parse_path(&fim, "e1 ~f1").unwrap()));
        assert_eq!(ext.tree().len(), 3);
        assert_eq!(phi_trim(&fim, &ext).tree(), z.tree());

        let g = builtin::rose2_free();
        let z = trunc(&g, &["e ~f e", "f"], 4);
        let ext = psi_extend(&g, &z, 4);
        assert_eq!(phi_trim(&g, &ext).tree(), z.tree());
        assert!(unverified_members(&g, &z).is_empty());
        let dangling = trunc(&g, &["e ~f"], 4);
        assert_eq!(unverified_members(&g, &dangling).len(), 1);
    }

    #[test]
    fn random_truncations_are_compatible() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(3);
        for g in [builtin::rose2_trivial(), builtin::rose2_free(), builtin::fim2()] {
            let v = g.vertex_by_name("v").unwrap();
            for _ in 0..50 {
                let z = random_truncation(&g, v, 4, &mut rng);
                assert!(z.tree().is_compatible_pairwise(&g));
            }
        }
    }
}
