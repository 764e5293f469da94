//! Finite lower sets of reduced paths, the semilattice of C-compatible lower
//! sets, and its canonical representatives.
//!
//! A [`PathTree`] is any finite prefix-closed set of reduced paths from one
//! vertex. A [`LowerSet`] additionally consists of C-separated, pairwise
//! C-compatible paths. A [`CanonicalLowerSet`] is a lower set none of whose
//! maximal elements ends in an inverse letter; it is the largest member of its
//! class under the congruence generated by `g↓ ~ (g x⁻¹)↓`.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::ops::Deref;

use thiserror::Error;

use crate::budget::{Budget, BudgetExceeded};
use crate::graph::{BlockId, SeparatedGraph, VertexId};
use crate::paths::{
    is_c_compatible, is_c_separated_path, letters_at, translate, Letter, ReducedPath,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SemilatticeError {
    #[error("paths start at different vertices")]
    MixedSources,
    #[error("empty set of paths")]
    Empty,
    #[error("incompatible pair")]
    Incompatible(ReducedPath, ReducedPath),
    #[error("path is not C-separated")]
    NotSeparated(ReducedPath),
    #[error("set is not lower-closed")]
    NotLower,
    #[error("a maximal element ends in an inverse letter")]
    NotCanonical,
}

/// A finite prefix-closed set of reduced paths from `base`, containing `base`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PathTree {
    base: VertexId,
    paths: BTreeSet<ReducedPath>,
}

impl PathTree {
    pub fn root(v: VertexId) -> Self {
        PathTree { base: v, paths: [ReducedPath::vertex(v)].into_iter().collect() }
    }

    /// The prefix closure of `paths`, which must share a source.
    pub fn closure_of<'a>(
        graph: &SeparatedGraph,
        paths: impl IntoIterator<Item = &'a ReducedPath>,
    ) -> Result<PathTree, SemilatticeError> {
        let mut iter = paths.into_iter().peekable();
        let base = iter.peek().ok_or(SemilatticeError::Empty)?.source();
        let mut tree = PathTree::root(base);
        for p in iter {
            if p.source() != base {
                return Err(SemilatticeError::MixedSources);
            }
            tree.insert_with_prefixes(graph, p);
        }
        Ok(tree)
    }

    /// Wraps an explicit set after checking that it is prefix-closed.
    pub fn from_set(graph: &SeparatedGraph, base: VertexId, paths: BTreeSet<ReducedPath>) -> Result<PathTree, SemilatticeError> {
        if paths.iter().any(|p| p.source() != base) {
            return Err(SemilatticeError::MixedSources);
        }
        if !paths.contains(&ReducedPath::vertex(base)) {
            return Err(SemilatticeError::NotLower);
        }
        if paths.iter().any(|p| p.parent(graph).is_some_and(|q| !paths.contains(&q))) {
            return Err(SemilatticeError::NotLower);
        }
        Ok(PathTree { base, paths })
    }

    fn insert_with_prefixes(&mut self, graph: &SeparatedGraph, p: &ReducedPath) {
        let mut k = p.len();
        // walk down until a prefix is already present
        while !self.paths.contains(&p.prefix(graph, k)) {
            k -= 1;
        }
        for j in k + 1..=p.len() {
            self.paths.insert(p.prefix(graph, j));
        }
    }

    /// `self ∪ p↓`.
    pub fn with_path(&self, graph: &SeparatedGraph, p: &ReducedPath) -> PathTree {
        assert_eq!(p.source(), self.base, "path must start at the tree's base");
        let mut t = self.clone();
        t.insert_with_prefixes(graph, p);
        t
    }

    pub fn base(&self) -> VertexId {
        self.base
    }

    pub fn paths(&self) -> &BTreeSet<ReducedPath> {
        &self.paths
    }

    pub fn iter(&self) -> impl Iterator<Item = &ReducedPath> {
        self.paths.iter()
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, p: &ReducedPath) -> bool {
        self.paths.contains(p)
    }

    pub fn is_subset(&self, other: &PathTree) -> bool {
        self.base == other.base && self.paths.is_subset(&other.paths)
    }

    pub fn depth(&self) -> usize {
        self.paths.iter().map(ReducedPath::len).max().unwrap_or(0)
    }

    pub fn union(&self, other: &PathTree) -> Result<PathTree, SemilatticeError> {
        if self.base != other.base {
            return Err(SemilatticeError::MixedSources);
        }
        let mut paths = self.paths.clone();
        paths.extend(other.paths.iter().cloned());
        Ok(PathTree { base: self.base, paths })
    }

    /// Members with no extension inside the tree.
    pub fn max_elements(&self, graph: &SeparatedGraph) -> Vec<ReducedPath> {
        let parents: HashSet<ReducedPath> = self.paths.iter().filter_map(|p| p.parent(graph)).collect();
        self.paths.iter().filter(|p| !parents.contains(*p)).cloned().collect()
    }

    /// `(max{g₀ : g ∈ T})↓`.
    pub fn normalized(&self, graph: &SeparatedGraph) -> PathTree {
        let keep: BTreeSet<ReducedPath> = self
            .paths
            .iter()
            .filter(|p| !p.ends_in_inverse())
            .cloned()
            .collect();
        let mut tree = PathTree::root(self.base);
        for p in &keep {
            tree.insert_with_prefixes(graph, p);
        }
        tree
    }

    pub fn is_canonical(&self, graph: &SeparatedGraph) -> bool {
        self.max_elements(graph).iter().all(|p| !p.ends_in_inverse())
    }

    /// `g · T ∪ g↓` where `g · T = {red(g h) : h ∈ T}`, a tree based at
    /// `source(g)`. The prefixes of `g` connect the translate to the new root;
    /// they already lie in `g · T` whenever `g⁻¹ ∈ T`.
    pub fn translated(&self, graph: &SeparatedGraph, g: &ReducedPath) -> Option<PathTree> {
        if g.range() != self.base {
            return None;
        }
        let mut tree = PathTree::root(g.source());
        tree.insert_with_prefixes(graph, g);
        tree.paths.extend(self.paths.iter().map(|h| translate(g, h).expect("h starts at the range of g")));
        Some(tree)
    }

    pub fn all_separated(&self, graph: &SeparatedGraph) -> bool {
        self.paths.iter().all(|p| is_c_separated_path(graph, p))
    }

    /// Pairwise check: every member is C-separated and every pair is
    /// C-compatible. Returns the first violating pair.
    pub fn incompatible_pair(&self, graph: &SeparatedGraph) -> Option<(ReducedPath, ReducedPath)> {
        if let Some(p) = self.paths.iter().find(|p| !is_c_separated_path(graph, p)) {
            return Some((p.clone(), p.clone()));
        }
        let members: Vec<&ReducedPath> = self.paths.iter().collect();
        for (i, a) in members.iter().enumerate() {
            for b in &members[i + 1..] {
                if !is_c_compatible(graph, a, b).expect("same base") {
                    return Some(((*a).clone(), (*b).clone()));
                }
            }
        }
        None
    }

    pub fn is_compatible_pairwise(&self, graph: &SeparatedGraph) -> bool {
        self.incompatible_pair(graph).is_none()
    }

    /// Local check: at every member, the positive letters leading to
    /// neighbours inside the tree use each block at most once.
    pub fn is_compatible_local(&self, graph: &SeparatedGraph) -> bool {
        let mut used: HashMap<(ReducedPath, BlockId), Letter> = HashMap::new();
        let mut admit = |at: ReducedPath, x: Letter| -> bool {
            if x.is_inverse() {
                return true;
            }
            match used.insert((at, x.block(graph)), x) {
                Some(y) => y == x,
                None => true,
            }
        };
        for p in &self.paths {
            let Some(x) = p.last() else { continue };
            let parent = p.parent(graph).expect("nonempty path");
            if !admit(parent, x) || !admit(p.clone(), x.inverse()) {
                return false;
            }
        }
        true
    }

    /// `{x : red(g x) ∈ T}` for a member `g`.
    pub fn local_letters(&self, graph: &SeparatedGraph, g: &ReducedPath) -> BTreeSet<Letter> {
        letters_at(graph, g.range())
            .into_iter()
            .filter(|&x| g.append(graph, x).is_some_and(|h| self.paths.contains(&h)))
            .collect()
    }

    pub fn display<'a>(&'a self, graph: &'a SeparatedGraph) -> SetDisplay<'a> {
        SetDisplay { paths: self.paths.iter().collect(), graph }
    }
}

/// Renders `{p1, p2, ...}` in path order.
pub struct SetDisplay<'a> {
    paths: Vec<&'a ReducedPath>,
    graph: &'a SeparatedGraph,
}

impl<'a> SetDisplay<'a> {
    pub fn new(graph: &'a SeparatedGraph, paths: impl IntoIterator<Item = &'a ReducedPath>) -> Self {
        let mut paths: Vec<&ReducedPath> = paths.into_iter().collect();
        paths.sort();
        paths.dedup();
        SetDisplay { paths, graph }
    }
}

impl fmt::Display for SetDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, p) in self.paths.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", p.display(self.graph))?;
        }
        f.write_str("}")
    }
}

/// A finite lower set of C-separated, pairwise C-compatible paths.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LowerSet(PathTree);

impl LowerSet {
    pub fn root(v: VertexId) -> Self {
        LowerSet(PathTree::root(v))
    }

    pub fn try_from_tree(graph: &SeparatedGraph, tree: PathTree) -> Result<LowerSet, SemilatticeError> {
        if let Some(p) = tree.paths.iter().find(|p| !is_c_separated_path(graph, p)) {
            return Err(SemilatticeError::NotSeparated(p.clone()));
        }
        match tree.incompatible_pair(graph) {
            Some((a, b)) => Err(SemilatticeError::Incompatible(a, b)),
            None => Ok(LowerSet(tree)),
        }
    }

    pub fn tree(&self) -> &PathTree {
        &self.0
    }

    pub fn into_tree(self) -> PathTree {
        self.0
    }
}

impl Deref for LowerSet {
    type Target = PathTree;
    fn deref(&self) -> &PathTree {
        &self.0
    }
}

/// A lower set whose maximal elements all end in a positive letter or are
/// the base vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalLowerSet(LowerSet);

impl CanonicalLowerSet {
    pub fn root(v: VertexId) -> Self {
        CanonicalLowerSet(LowerSet::root(v))
    }

    pub fn try_from_tree(graph: &SeparatedGraph, tree: PathTree) -> Result<Self, SemilatticeError> {
        let set = LowerSet::try_from_tree(graph, tree)?;
        if !set.is_canonical(graph) {
            return Err(SemilatticeError::NotCanonical);
        }
        Ok(CanonicalLowerSet(set))
    }

    pub fn lower_set(&self) -> &LowerSet {
        &self.0
    }

    pub fn tree(&self) -> &PathTree {
        &self.0 .0
    }

    pub fn into_tree(self) -> PathTree {
        self.0 .0
    }
}

impl Deref for CanonicalLowerSet {
    type Target = PathTree;
    fn deref(&self) -> &PathTree {
        &self.0 .0
    }
}

/// `A↓`, or the first incompatible pair.
pub fn lower_closure<'a>(
    graph: &SeparatedGraph,
    paths: impl IntoIterator<Item = &'a ReducedPath>,
) -> Result<LowerSet, SemilatticeError> {
    LowerSet::try_from_tree(graph, PathTree::closure_of(graph, paths)?)
}

pub fn max_elements(graph: &SeparatedGraph, set: &LowerSet) -> Vec<ReducedPath> {
    set.max_elements(graph)
}

/// `I₀ = (max{g₀ : g ∈ I})↓`.
pub fn normalize_0(graph: &SeparatedGraph, set: &LowerSet) -> CanonicalLowerSet {
    CanonicalLowerSet(LowerSet(set.normalized(graph)))
}

/// `I ∪ J` when both sit at one vertex and the union is compatible.
pub fn meet(graph: &SeparatedGraph, i: &LowerSet, j: &LowerSet) -> Option<LowerSet> {
    let union = i.union(j).ok()?;
    union.is_compatible_local(graph).then_some(LowerSet(union))
}

/// `[I] ≤ [J]`, i.e. `J₀ ⊆ I₀`.
pub fn class_leq(graph: &SeparatedGraph, i: &LowerSet, j: &LowerSet) -> bool {
    normalize_0(graph, j).is_subset(&normalize_0(graph, i))
}

pub fn class_eq(graph: &SeparatedGraph, i: &LowerSet, j: &LowerSet) -> bool {
    normalize_0(graph, i) == normalize_0(graph, j)
}

/// Which lower sets an enumeration produces.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum LowerSetKind {
    All,
    Canonical,
}

/// Calls `visit` on every lower set at `base` whose paths have length at most
/// `max_len`, in a deterministic order. Returns the number visited.
pub fn enumerate_lower_sets(
    graph: &SeparatedGraph,
    base: VertexId,
    max_len: usize,
    kind: LowerSetKind,
    budget: &mut Budget,
    visit: &mut dyn FnMut(LowerSet),
) -> Result<u64, BudgetExceeded> {
    let mut state = Enumerator { graph, max_len, kind, budget, visit, count: 0 };
    let root = ReducedPath::vertex(base);
    let mut pending = vec![root.clone()];
    let mut current = vec![root];
    state.descend(&mut pending, &mut current)?;
    Ok(state.count)
}

/// Collects [`enumerate_lower_sets`] into a vector.
pub fn lower_sets(
    graph: &SeparatedGraph,
    base: VertexId,
    max_len: usize,
    kind: LowerSetKind,
    budget: &mut Budget,
) -> Result<Vec<LowerSet>, BudgetExceeded> {
    let mut out = Vec::new();
    enumerate_lower_sets(graph, base, max_len, kind, budget, &mut |s| out.push(s))?;
    Ok(out)
}

struct Enumerator<'a> {
    graph: &'a SeparatedGraph,
    max_len: usize,
    kind: LowerSetKind,
    budget: &'a mut Budget,
    visit: &'a mut dyn FnMut(LowerSet),
    count: u64,
}

impl Enumerator<'_> {
    fn descend(&mut self, pending: &mut Vec<ReducedPath>, current: &mut Vec<ReducedPath>) -> Result<(), BudgetExceeded> {
        self.budget.tick()?;
        let Some(node) = pending.pop() else {
            let tree = PathTree { base: current[0].source(), paths: current.iter().cloned().collect() };
            if self.kind == LowerSetKind::All || tree.is_canonical(self.graph) {
                self.count += 1;
                (self.visit)(LowerSet(tree));
            }
            return Ok(());
        };
        // slots: each inverse child is in or out; each block contributes at most one positive child
        let mut slots: Vec<Vec<Option<ReducedPath>>> = Vec::new();
        if node.len() < self.max_len {
            let mut by_block: BTreeMap<BlockId, Vec<Option<ReducedPath>>> = BTreeMap::new();
            for x in letters_at(self.graph, node.range()) {
                let Some(child) = node.extend(self.graph, x) else { continue };
                if !is_c_separated_path(self.graph, &child) {
                    continue;
                }
                if x.is_inverse() {
                    slots.push(vec![None, Some(child)]);
                } else {
                    by_block.entry(x.block(self.graph)).or_insert_with(|| vec![None]).push(Some(child));
                }
            }
            slots.extend(by_block.into_values());
        }
        // a canonical set has no leaf ending in an inverse letter
        let must_extend = self.kind == LowerSetKind::Canonical && node.ends_in_inverse();
        let mut choice = vec![0usize; slots.len()];
        loop {
            let chosen: Vec<ReducedPath> = slots
                .iter()
                .zip(&choice)
                .filter_map(|(slot, &c)| slot[c].clone())
                .collect();
            let added = chosen.len();
            if must_extend && added == 0 {
                if slots.is_empty() {
                    break;
                }
                choice[0] = 1;
                continue;
            }
            current.extend(chosen.iter().cloned());
            pending.extend(chosen);
            self.descend(pending, current)?;
            pending.truncate(pending.len() - added);
            current.truncate(current.len() - added);
            // odometer step
            let mut i = 0;
            while i < slots.len() {
                choice[i] += 1;
                if choice[i] < slots[i].len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
            if i == slots.len() {
                break;
            }
        }
        pending.push(node);
        Ok(())
    }
}
