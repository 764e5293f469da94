use std::collections::BTreeSet;
use std::fmt;

use crate::budget::Budget;
use crate::graph::{SeparatedGraph, VertexId};
use crate::paths::{is_c_separated_path, Letter, ReducedPath};
use crate::semilattice::{CanonicalLowerSet, PathTree, SetDisplay};

use super::truncation::FilterTruncation;
use super::SpectrumError;

/// Splits `f` as `g · g'` with `g` the longest prefix of `f` in `tree`, and
/// returns `g` when `g'` has the shape `x₁⁻¹ … xₙ⁻¹ y`.
fn split_n(graph: &SeparatedGraph, tree: &PathTree, f: &ReducedPath) -> Option<ReducedPath> {
    let k = (0..=f.len()).rev().find(|&k| tree.contains(&f.prefix(graph, k)))?;
    let rest = &f.letters()[k..];
    let (last, body) = rest.split_last()?;
    (last.is_positive() && body.iter().all(|x| x.is_inverse())).then(|| f.prefix(graph, k))
}

/// The factorisation `f = λ₀ λ₁` of a member of `N(I)`, with `λ₀ ∈ I` and
/// `λ₁ = x₁⁻¹ … xₙ⁻¹ y`.
pub fn n_decompose(graph: &SeparatedGraph, i: &PathTree, f: &ReducedPath) -> Option<(ReducedPath, ReducedPath)> {
    if !is_in_n(graph, i, f) {
        return None;
    }
    let head = split_n(graph, i, f)?;
    let tail = ReducedPath::from_letters(graph, head.range(), f.letters()[head.len()..].to_vec()).ok()?;
    Some((head, tail))
}

/// Membership in `N(I)`: `f = g g'` with `g ∈ I`, `g' ∈ N(r(g))`,
/// `g [g']₁ ∉ I`, `f` C-separated and `I ∪ f↓` compatible.
pub fn is_in_n(graph: &SeparatedGraph, i: &PathTree, f: &ReducedPath) -> bool {
    f.source() == i.base()
        && !i.contains(f)
        && split_n(graph, i, f).is_some()
        && is_c_separated_path(graph, f)
        && i.with_path(graph, f).is_compatible_local(graph)
}

/// All members of `N(I)` of length at most `max_len`, in path order.
pub fn enumerate_n(graph: &SeparatedGraph, i: &CanonicalLowerSet, max_len: usize, budget: &mut Budget) -> Result<BTreeSet<ReducedPath>, SpectrumError> {
    let mut out = BTreeSet::new();
    for g in i.iter() {
        // stack of g·x₁⁻¹…xₖ⁻¹ with k ≥ 0
        let mut stack = vec![g.clone()];
        while let Some(q) = stack.pop() {
            budget.tick()?;
            if q.len() >= max_len {
                continue;
            }
            let fresh = |p: &ReducedPath| q.len() > g.len() || !i.contains(p);
            for &e in graph.out_edges(q.range()) {
                if let Some(h) = q.extend(graph, Letter::positive(e)) {
                    if fresh(&h) && is_c_separated_path(graph, &h) && i.with_path(graph, &h).is_compatible_local(graph) {
                        out.insert(h);
                    }
                }
            }
            for &e in graph.in_edges(q.range()) {
                if let Some(h) = q.extend(graph, Letter::inverse_of(e)) {
                    if fresh(&h) {
                        stack.push(h);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// The basic set `Z(I ∖ F)` of filters containing `I` and avoiding `F`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CylinderSet {
    i: CanonicalLowerSet,
    f: BTreeSet<ReducedPath>,
}

impl CylinderSet {
    pub fn new(graph: &SeparatedGraph, i: CanonicalLowerSet, f: BTreeSet<ReducedPath>) -> Result<Self, SpectrumError> {
        if let Some(bad) = f.iter().find(|p| !is_in_n(graph, &i, p)) {
            return Err(SpectrumError::MalformedCylinder(format!(
                "{} is not in N(I) for I = {}",
                bad.display(graph),
                i.display(graph)
            )));
        }
        Ok(CylinderSet { i, f })
    }

    /// `Z(I)` with no excluded paths.
    pub fn full(i: CanonicalLowerSet) -> Self {
        CylinderSet { i, f: BTreeSet::new() }
    }

    pub fn base(&self) -> VertexId {
        self.i.base()
    }

    pub fn lower(&self) -> &CanonicalLowerSet {
        &self.i
    }

    pub fn excluded(&self) -> &BTreeSet<ReducedPath> {
        &self.f
    }

    /// Longest path mentioned by the cylinder.
    pub fn reach(&self) -> usize {
        self.i.depth().max(self.f.iter().map(ReducedPath::len).max().unwrap_or(0))
    }

    pub fn display<'a>(&'a self, graph: &'a SeparatedGraph) -> CylinderDisplay<'a> {
        CylinderDisplay { cyl: self, graph }
    }
}

pub struct CylinderDisplay<'a> {
    cyl: &'a CylinderSet,
    graph: &'a SeparatedGraph,
}

impl fmt::Display for CylinderDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = self.cyl.i.display(self.graph);
        if self.cyl.f.is_empty() {
            write!(f, "Z({i})")
        } else {
            write!(f, "Z({i} \\ {})", SetDisplay::new(self.graph, &self.cyl.f))
        }
    }
}

/// `I ⊆ Z` and `F ∩ Z = ∅`; the truncation must be deeper than every path
/// the cylinder mentions.
pub fn cylinder_member(z: &FilterTruncation, b: &CylinderSet) -> Result<bool, SpectrumError> {
    if z.depth() <= b.reach() {
        return Err(SpectrumError::TooShallow { depth: z.depth(), needed: b.reach() + 1 });
    }
    Ok(z.base() == b.base() && b.i.is_subset(z.tree()) && b.f.iter().all(|p| !z.contains(p)))
}

fn canonical(graph: &SeparatedGraph, tree: PathTree) -> CanonicalLowerSet {
    CanonicalLowerSet::try_from_tree(graph, tree).expect("unions of canonical compatible sets are canonical")
}

/// `Z(I₁ ∪ I₂ ∖ F)` with `F` the members of `F₁ ∪ F₂` still in `N(I₁ ∪ I₂)`,
/// or `None` when the intersection is empty. Excluded paths incompatible
/// with `I₁ ∪ I₂` are dropped since no filter containing `I₁ ∪ I₂` holds them.
pub fn cylinder_intersect(graph: &SeparatedGraph, b1: &CylinderSet, b2: &CylinderSet) -> Option<CylinderSet> {
    let union = b1.i.union(&b2.i).ok()?;
    if !union.is_compatible_local(graph) {
        return None;
    }
    if b1.f.iter().chain(&b2.f).any(|p| union.contains(p)) {
        return None;
    }
    let f = b1.f.iter().chain(&b2.f).filter(|p| is_in_n(graph, &union, p)).cloned().collect();
    Some(CylinderSet::new(graph, canonical(graph, union), f).expect("filtered through N(I)"))
}

/// `g₀, g₀g₁, …, g₀⋯gₙ` for `h ∉ I`, where `g₀` is the longest prefix of
/// `h` in `I` and each later segment is `x₁⁻¹ … xₖ⁻¹ y`.
fn segment_prefixes(graph: &SeparatedGraph, i: &PathTree, h: &ReducedPath) -> Vec<ReducedPath> {
    let k0 = (0..=h.len()).rev().find(|&k| i.contains(&h.prefix(graph, k))).expect("the base lies in I");
    let mut out = vec![h.prefix(graph, k0)];
    for (j, x) in h.letters().iter().enumerate().skip(k0) {
        if x.is_positive() {
            out.push(h.prefix(graph, j + 1));
        }
    }
    debug_assert_eq!(out.last(), Some(h));
    out
}

/// Writes `B₁ ∖ B₂` as a list of pairwise disjoint cylinders.
pub fn cylinder_difference(graph: &SeparatedGraph, b1: &CylinderSet, b2: &CylinderSet, budget: &mut Budget) -> Result<Vec<CylinderSet>, SpectrumError> {
    if b1.base() != b2.base() || cylinder_intersect(graph, b1, b2).is_none() {
        return Ok(vec![b1.clone()]);
    }
    let (i1, i2) = (b1.i.tree(), b2.i.tree());
    let union = i1.union(i2).expect("same base");
    let mut out = Vec::new();

    if !i2.is_subset(i1) {
        let chains: Vec<Vec<ReducedPath>> = i2
            .max_elements(graph)
            .into_iter()
            .filter(|h| !i1.contains(h))
            .map(|h| segment_prefixes(graph, i1, &h))
            .collect();
        if chains.iter().any(|c| b1.f.contains(&c[1])) {
            return Ok(vec![b1.clone()]);
        }
        let mut index = vec![0usize; chains.len()];
        loop {
            budget.tick()?;
            let at_top = index.iter().zip(&chains).all(|(&k, c)| k + 1 == c.len());
            if !at_top {
                let mut tree = i1.clone();
                for (&k, c) in index.iter().zip(&chains) {
                    tree = tree.with_path(graph, &c[k]);
                }
                let mut f: BTreeSet<ReducedPath> = b1.f.iter().filter(|p| is_in_n(graph, &tree, p)).cloned().collect();
                f.extend(index.iter().zip(&chains).filter(|(&k, c)| k + 1 < c.len()).map(|(&k, c)| c[k + 1].clone()));
                if f.iter().all(|p| !tree.contains(p)) {
                    out.push(CylinderSet::new(graph, canonical(graph, tree), f)?);
                }
            }
            // odometer over ∏ [0, n(h)]
            let mut pos = 0;
            while pos < index.len() {
                index[pos] += 1;
                if index[pos] < chains[pos].len() {
                    break;
                }
                index[pos] = 0;
                pos += 1;
            }
            if pos == index.len() {
                break;
            }
        }
    }

    let candidates: Vec<&ReducedPath> = b2.f.iter().filter(|p| !b1.f.contains(*p)).collect();
    if candidates.len() > 20 {
        return Err(SpectrumError::Budget(crate::budget::BudgetExceeded { limit: budget.limit() }));
    }
    let all: BTreeSet<&ReducedPath> = b1.f.iter().chain(&b2.f).collect();
    for mask in 1u32..(1 << candidates.len()) {
        budget.tick()?;
        let mut tree = union.clone();
        for (j, h) in candidates.iter().enumerate() {
            if mask >> j & 1 == 1 {
                tree = tree.with_path(graph, h);
            }
        }
        if !tree.is_compatible_local(graph) {
            continue;
        }
        let f = all.iter().filter(|p| is_in_n(graph, &tree, p)).map(|p| (*p).clone()).collect();
        out.push(CylinderSet::new(graph, canonical(graph, tree), f)?);
    }
    Ok(out)
}
