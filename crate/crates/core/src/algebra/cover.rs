use std::fmt;

use crate::budget::Budget;
use crate::graph::{BlockId, EdgeId, SeparatedGraph};
use crate::paths::{is_c_separated_path, Letter, ReducedPath};
use crate::semigroup::Semigroup;
use crate::semilattice::{enumerate_lower_sets, CanonicalLowerSet, LowerSet, LowerSetKind, PathTree};

use super::{e_of, range_projection, AlgebraElement, AlgebraError};

/// Outcome of a bounded search for a lower set that escapes a cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoverVerdict {
    NoCounterexample { max_len: usize },
    Counterexample(CanonicalLowerSet),
}

impl CoverVerdict {
    pub fn is_cover(&self) -> bool {
        matches!(self, CoverVerdict::NoCounterexample { .. })
    }

    pub fn display<'a>(&'a self, graph: &'a SeparatedGraph) -> VerdictDisplay<'a> {
        VerdictDisplay { verdict: self, graph }
    }
}

pub struct VerdictDisplay<'a> {
    verdict: &'a CoverVerdict,
    graph: &'a SeparatedGraph,
}

impl fmt::Display for VerdictDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.verdict {
            CoverVerdict::NoCounterexample { max_len } => write!(f, "no counterexample up to maxLen {max_len}"),
            CoverVerdict::Counterexample(j) => write!(f, "counterexample J = {}", j.display(self.graph)),
        }
    }
}

fn meets(graph: &SeparatedGraph, j: &PathTree, z: &PathTree) -> bool {
    j.union(z).is_ok_and(|u| u.is_compatible_local(graph))
}

fn check_cover_input(i: &CanonicalLowerSet, zs: &[CanonicalLowerSet]) -> Result<(), AlgebraError> {
    if zs.iter().any(|z| z.base() != i.base() || !i.is_subset(z)) {
        return Err(AlgebraError::NotBelow);
    }
    Ok(())
}

/// Searches for `J ∈ Y₀` with `I ⊆ J`, paths of length at most `max_len`,
/// compatible with none of the `I_z`.
///
/// Two compatible lower sets clash only where a shared node `u` has
/// children `ux ∈ J` and `uy ∈ I_z` along distinct positive letters of one
/// block. The search therefore only adds such witnesses `ux`, one for the
/// first member of `zs` still met, and backtracks over the choices.
pub fn is_cover_bounded(
    graph: &SeparatedGraph,
    i: &CanonicalLowerSet,
    zs: &[CanonicalLowerSet],
    max_len: usize,
    budget: &mut Budget,
) -> Result<CoverVerdict, AlgebraError> {
    check_cover_input(i, zs)?;
    if i.depth() > max_len {
        return Ok(CoverVerdict::NoCounterexample { max_len });
    }
    let found = search(graph, i.tree().clone(), zs, max_len, budget)?;
    Ok(match found {
        Some(j) => CoverVerdict::Counterexample(CanonicalLowerSet::try_from_tree(graph, j).expect("witnesses end positively")),
        None => CoverVerdict::NoCounterexample { max_len },
    })
}

fn search(
    graph: &SeparatedGraph,
    j: PathTree,
    zs: &[CanonicalLowerSet],
    max_len: usize,
    budget: &mut Budget,
) -> Result<Option<PathTree>, AlgebraError> {
    budget.tick()?;
    let Some(z) = zs.iter().find(|z| meets(graph, &j, z.tree())) else {
        return Ok(Some(j));
    };
    for uy in z.iter() {
        let (Some(y), Some(u)) = (uy.last(), uy.parent(graph)) else { continue };
        if y.is_inverse() {
            continue;
        }
        for &e in &graph.block(y.block(graph)).edges {
            let x = Letter::positive(e);
            if x == y {
                continue;
            }
            let Some(ux) = u.extend(graph, x) else { continue };
            if ux.len() > max_len || !is_c_separated_path(graph, &ux) {
                continue;
            }
            let next = j.with_path(graph, &ux);
            if !next.is_compatible_local(graph) {
                continue;
            }
            if let Some(hit) = search(graph, next, zs, max_len, budget)? {
                return Ok(Some(hit));
            }
        }
    }
    Ok(None)
}

/// Reference version of [`is_cover_bounded`] that enumerates every
/// canonical lower set up to `max_len`.
pub fn is_cover_exhaustive(
    graph: &SeparatedGraph,
    i: &CanonicalLowerSet,
    zs: &[CanonicalLowerSet],
    max_len: usize,
    budget: &mut Budget,
) -> Result<CoverVerdict, AlgebraError> {
    check_cover_input(i, zs)?;
    let mut found: Option<LowerSet> = None;
    enumerate_lower_sets(graph, i.base(), max_len, LowerSetKind::Canonical, budget, &mut |j| {
        if found.is_none() && i.is_subset(&j) && zs.iter().all(|z| !meets(graph, &j, z.tree())) {
            found = Some(j);
        }
    })?;
    Ok(match found {
        Some(j) => CoverVerdict::Counterexample(CanonicalLowerSet::try_from_tree(graph, j.into_tree()).expect("canonical")),
        None => CoverVerdict::NoCounterexample { max_len },
    })
}

fn finite_block_at(graph: &SeparatedGraph, x: BlockId, at: crate::graph::VertexId) -> Result<(), AlgebraError> {
    let block = graph.block(x);
    if !block.is_finite() {
        return Err(AlgebraError::InfiniteBlock(block.name.clone()));
    }
    if block.source != at {
        return Err(AlgebraError::BlockSource {
            block: block.name.clone(),
            vertex: graph.vertex_name(at).to_string(),
        });
    }
    Ok(())
}

/// An edge `x ∈ X` with `J ∪ {x}↓` compatible: the first letter of a
/// maximal member of `J` when that letter lies in `X`, otherwise the first
/// edge of `X`.
pub fn cover_witness(graph: &SeparatedGraph, j: &CanonicalLowerSet, x: BlockId) -> Result<EdgeId, AlgebraError> {
    let v = j.base();
    finite_block_at(graph, x, v)?;
    let block = graph.block(x);
    let from_j = j
        .max_elements(graph)
        .iter()
        .filter_map(|m| m.first())
        .find(|l| l.is_positive() && block.edges.contains(&l.edge));
    let edge = match from_j {
        Some(l) => l.edge,
        None => *block.edges.first().ok_or_else(|| AlgebraError::Precondition(format!("block `{}` is empty", block.name)))?,
    };
    let path = ReducedPath::from_letters(graph, v, vec![Letter::positive(edge)]).expect("edge leaves v");
    if !j.with_path(graph, &path).is_compatible_local(graph) {
        return Err(AlgebraError::Precondition(format!("no compatible edge in `{}`", block.name)));
    }
    Ok(edge)
}

/// Checks `e(I_z) · Σ_{f ∈ X} (α₀μf)(α₀μf)* = Σ_{f ∈ X} e(I_z ∪ {α₀μf}↓)`
/// by multiplying out both sides.
pub fn claim1_check(
    s: &Semigroup<'_>,
    i_z: &CanonicalLowerSet,
    alpha0: &ReducedPath,
    mu: &[Letter],
    x: BlockId,
) -> Result<bool, AlgebraError> {
    let g = s.graph();
    if !i_z.contains(alpha0) {
        return Err(AlgebraError::Precondition(format!("{} is not in I_z", alpha0.display(g))));
    }
    if !mu.iter().all(|l| l.is_inverse()) {
        return Err(AlgebraError::Precondition("μ must consist of inverse letters".into()));
    }
    let mut stem = alpha0.clone();
    for &l in mu {
        stem = stem
            .extend(g, l)
            .ok_or_else(|| AlgebraError::Precondition(format!("{} {} is not reduced", stem.display(g), l.display(g))))?;
    }
    finite_block_at(g, x, stem.range())?;

    let mut lhs_sum = AlgebraElement::zero();
    let mut rhs = AlgebraElement::zero();
    for &f in &g.block(x).edges {
        let p = stem
            .extend(g, Letter::positive(f))
            .filter(|p| is_c_separated_path(g, p))
            .ok_or_else(|| AlgebraError::Precondition(format!("α₀μ{} is not C-separated", g.edge_name(f))))?;
        if i_z.contains(&p) {
            return Err(AlgebraError::Precondition(format!("{} already lies in I_z", p.display(g))));
        }
        let joined = i_z.with_path(g, &p);
        let joined = LowerSet::try_from_tree(g, joined)
            .map_err(|_| AlgebraError::Precondition(format!("I_z ∪ {{{}}}↓ is not compatible", p.display(g))))?;
        lhs_sum = lhs_sum.add(&range_projection(s, &p));
        rhs = rhs.add(&e_of(s, &joined));
    }
    let lhs = e_of(s, i_z.lower_set()).multiply(s, &lhs_sum);
    Ok(lhs == rhs)
}
