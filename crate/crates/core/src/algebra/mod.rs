//! The semigroup algebra `ℚ[IS(E,C)]`, which is the tame Cohn path algebra
//! written on the basis of nonzero normal forms.
//!
//! Besides ring arithmetic this module builds the distinguished idempotents
//! `e(I)`, `e(λ₀ ∖ λ₁)`, `e(I ∖ F)` and `q_X`, and provides bounded checks
//! for covers and for the identity behind the finite covers `{ee* : e ∈ X}`.

mod cover;
mod element;
mod scalar;

use thiserror::Error;

use crate::budget::{Budget, BudgetExceeded};
use crate::graph::BlockId;
use crate::paths::{separated_paths_from, translate, ReducedPath};
use crate::semigroup::{Element, Semigroup};
use crate::semilattice::{enumerate_lower_sets, max_elements, normalize_0, LowerSet, LowerSetKind};
use crate::spectrum::{n_decompose, CylinderSet};

pub use cover::{claim1_check, cover_witness, is_cover_bounded, is_cover_exhaustive, CoverVerdict};
pub use element::AlgebraElement;
pub use scalar::{int, ratio, Rational, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("block `{0}` is infinite; q_X needs a finite block")]
    InfiniteBlock(String),
    #[error("block `{block}` does not start at `{vertex}`")]
    BlockSource { block: String, vertex: String },
    #[error("`{0}` is not of the form x₁⁻¹ … xₙ⁻¹ y")]
    NotASegment(String),
    #[error("`{0}` is not idempotent")]
    NotIdempotent(String),
    #[error("the idempotents do not commute")]
    NotCommuting,
    #[error("lower set is not contained in a member of the cover")]
    NotBelow,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
}

/// `g g*` as an algebra element; zero when `g` is not C-separated.
pub fn range_projection(s: &Semigroup<'_>, g: &ReducedPath) -> AlgebraElement {
    let a = s.path_element(g);
    AlgebraElement::basis(&s.mul(&a, &s.inverse(&a)))
}

/// `e(I) = ∏_{λ ∈ max(I)} λλ*`.
pub fn e_of(s: &Semigroup<'_>, set: &LowerSet) -> AlgebraElement {
    let g = s.graph();
    let mut acc = AlgebraElement::basis(&s.vertex(set.base()));
    for lambda in max_elements(g, set) {
        acc = acc.multiply(s, &range_projection(s, &lambda));
    }
    debug_assert!(acc.is_idempotent(s));
    debug_assert_eq!(acc, AlgebraElement::basis(&s.idempotent(&normalize_0(g, set))));
    acc
}

/// `e(λ₀ ∖ λ₁) = λ₀λ₀* − λλ*` with `λ = λ₀λ₁` and `λ₁ = x₁⁻¹ … xₙ⁻¹ y`.
pub fn e_diff(s: &Semigroup<'_>, lambda0: &ReducedPath, lambda1: &ReducedPath) -> Result<AlgebraElement, AlgebraError> {
    let g = s.graph();
    let shown = || lambda1.display(g).to_string();
    let (last, body) = lambda1.letters().split_last().ok_or_else(|| AlgebraError::NotASegment(shown()))?;
    if !last.is_positive() || !body.iter().all(|x| x.is_inverse()) {
        return Err(AlgebraError::NotASegment(shown()));
    }
    let lambda = translate(lambda0, lambda1)
        .filter(|l| l.len() == lambda0.len() + lambda1.len())
        .ok_or_else(|| AlgebraError::Precondition(format!("{} {} is not reduced", lambda0.display(g), shown())))?;
    let out = range_projection(s, lambda0).sub(&range_projection(s, &lambda));
    debug_assert!(out.is_idempotent(s));
    Ok(out)
}

/// `e(I ∖ F) = e(I) · ∏_{f ∈ F} e(λ₀(f) ∖ λ₁(f))`.
pub fn e_cyl(s: &Semigroup<'_>, b: &CylinderSet) -> Result<AlgebraElement, AlgebraError> {
    let g = s.graph();
    let tree = b.lower().tree();
    let mut acc = e_of(s, b.lower().lower_set());
    for f in b.excluded() {
        let (lambda0, lambda1) = n_decompose(g, tree, f)
            .ok_or_else(|| AlgebraError::Precondition(format!("{} is not in N(I)", f.display(g))))?;
        acc = acc.multiply(s, &e_diff(s, &lambda0, &lambda1)?);
    }
    debug_assert!(acc.is_idempotent(s));
    Ok(acc)
}

/// `q_X = v − Σ_{e ∈ X} ee*` for a finite block `X` at `v`.
pub fn q_of(s: &Semigroup<'_>, x: BlockId) -> Result<AlgebraElement, AlgebraError> {
    let g = s.graph();
    let block = g.block(x);
    if !block.is_finite() {
        return Err(AlgebraError::InfiniteBlock(block.name.clone()));
    }
    let v = block.source;
    let mut out = AlgebraElement::basis(&s.vertex(v));
    for &e in &block.edges {
        let path = ReducedPath::from_letters(g, v, vec![crate::paths::Letter::positive(e)]).expect("edge leaves v");
        out = out.sub(&range_projection(s, &path));
    }
    debug_assert!(out.is_idempotent(s));
    Ok(out)
}

/// `p ∨ q = p + q − pq` for commuting idempotents.
pub fn or_join(s: &Semigroup<'_>, p: &AlgebraElement, q: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
    for x in [p, q] {
        if !x.is_idempotent(s) {
            return Err(AlgebraError::NotIdempotent(x.render(s)));
        }
    }
    let pq = p.multiply(s, q);
    if pq != q.multiply(s, p) {
        return Err(AlgebraError::NotCommuting);
    }
    let out = p.add(q).sub(&pq);
    debug_assert!(out.is_idempotent(s));
    Ok(out)
}

/// All nonzero elements of `IS(E,C)` whose tree paths and carrier have
/// length at most `max_len`, sorted.
pub fn basis_enumerate(s: &Semigroup<'_>, max_len: usize, budget: &mut Budget) -> Result<Vec<Element>, BudgetExceeded> {
    let g = s.graph();
    let mut out = Vec::new();
    for v in g.vertices() {
        let carriers = separated_paths_from(g, v, max_len);
        let mut trees = Vec::new();
        enumerate_lower_sets(g, v, max_len, LowerSetKind::Canonical, budget, &mut |t| trees.push(t.into_tree()))?;
        for tree in trees {
            for carrier in &carriers {
                budget.tick()?;
                if let Ok(a) = s.element(tree.clone(), carrier.clone()) {
                    out.push(a);
                }
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{builtin, SeparatedGraph};
    use crate::paths::parse_path;
    use crate::semilattice::{CanonicalLowerSet, PathTree};

    fn word(s: &Semigroup<'_>, w: &str) -> AlgebraElement {
        AlgebraElement::basis(&s.parse_word(w).unwrap())
    }

    fn lower(g: &SeparatedGraph, paths: &[&str]) -> LowerSet {
        let v = g.vertex_by_name("v").unwrap();
        let mut ps = vec![ReducedPath::vertex(v)];
        ps.extend(paths.iter().map(|p| parse_path(g, p).unwrap()));
        LowerSet::try_from_tree(g, PathTree::closure_of(g, ps.iter()).unwrap()).unwrap()
    }

    #[test]
    fn orthogonal_sum_squares_to_twice_v() {
        let g = builtin::rose2_trivial();
        let s = Semigroup::separated(&g);
        let x = word(&s, "e").add(&word(&s, "f"));
        let v = word(&s, "v");
        assert_eq!(x.star(&s).multiply(&s, &x), v.scalar_mul(&int(2)));
    }

    #[test]
    fn rendering_uses_signs_and_fractions() {
        let g = builtin::rose2_trivial();
        let s = Semigroup::separated(&g);
        let x = word(&s, "v").scalar_mul(&ratio(1, 2)).sub(&word(&s, "e"));
        let text = x.render(&s);
        assert!(text.starts_with("1/2·[") && text.contains(" - 1·["), "{text}");
        assert_eq!(AlgebraElement::<Rational>::zero().render(&s), "0");
    }

    #[test]
    fn q_of_is_a_projection() {
        let g = builtin::rose2_trivial();
        let s = Semigroup::separated(&g);
        let x = g.blocks_at(g.vertex_by_name("v").unwrap())[0];
        let q = q_of(&s, x).unwrap();
        let expect = word(&s, "v").sub(&word(&s, "e ~e")).sub(&word(&s, "f ~f"));
        assert_eq!(q, expect);
        assert!(q.is_idempotent(&s));
    }

    #[test]
    fn q_of_rejects_infinite_blocks() {
        let g = builtin::rose2_trivial();
        let blocks = g.blocks_at(g.vertex_by_name("v").unwrap()).to_vec();
        let h = g.with_cardinality(&blocks, crate::graph::Cardinality::Infinite);
        let s = Semigroup::separated(&h);
        assert!(matches!(q_of(&s, blocks[0]), Err(AlgebraError::InfiniteBlock(_))));
    }

    #[test]
    fn e_of_ignores_inverse_ending_maxima() {
        let g = builtin::rose2_free();
        let s = Semigroup::separated(&g);
        let big = e_of(&s, &lower(&g, &["e e ~f"]));
        let small = e_of(&s, &lower(&g, &["e e"]));
        assert_eq!(big, small);
        assert_eq!(e_of(&s, &LowerSet::root(g.vertex_by_name("v").unwrap())), word(&s, "v"));
    }

    #[test]
    fn or_join_laws() {
        let g = builtin::rose2_trivial();
        let s = Semigroup::separated(&g);
        let p = word(&s, "e ~e");
        let q = word(&s, "f ~f");
        assert_eq!(or_join(&s, &p, &q).unwrap(), p.add(&q));
        assert_eq!(or_join(&s, &p, &p).unwrap(), p);
        assert_eq!(or_join(&s, &p, &AlgebraElement::zero()).unwrap(), p);
        assert!(matches!(or_join(&s, &word(&s, "e"), &p), Err(AlgebraError::NotIdempotent(_))));
    }

    #[test]
    fn e_cyl_of_root_minus_edge() {
        let g = builtin::rose2_free();
        let s = Semigroup::separated(&g);
        let v = g.vertex_by_name("v").unwrap();
        let e = parse_path(&g, "e").unwrap();
        let b = CylinderSet::new(&g, CanonicalLowerSet::root(v), [e].into_iter().collect()).unwrap();
        assert_eq!(e_cyl(&s, &b).unwrap(), word(&s, "v").sub(&word(&s, "e ~e")));
    }

    #[test]
    fn e_diff_rejects_bad_segments() {
        let g = builtin::rose2_free();
        let s = Semigroup::separated(&g);
        let e = parse_path(&g, "e").unwrap();
        let bad = parse_path(&g, "~f").unwrap();
        assert!(matches!(e_diff(&s, &e, &bad), Err(AlgebraError::NotASegment(_))));
        let seg = parse_path(&g, "~f e").unwrap();
        let d = e_diff(&s, &e, &seg).unwrap();
        assert!(d.is_idempotent(&s));
    }

    #[test]
    fn basis_at_length_zero_is_the_vertices() {
        let g = builtin::fim2();
        let s = Semigroup::separated(&g);
        let b = basis_enumerate(&s, 0, &mut Budget::new(1_000)).unwrap();
        let vertices: Vec<Element> = g.vertices().map(|v| s.vertex(v)).collect();
        let mut sorted = vertices.clone();
        sorted.sort();
        assert_eq!(b, sorted);
    }

    #[test]
    fn basis_products_have_unit_structure_constants() {
        let g = builtin::rose2_trivial();
        let s = Semigroup::separated(&g);
        let b = basis_enumerate(&s, 1, &mut Budget::new(100_000)).unwrap();
        for a in &b {
            for c in &b {
                let p = AlgebraElement::<Rational>::basis(a).multiply(&s, &AlgebraElement::basis(c));
                assert!(p.support_len() <= 1);
                assert!(p.terms().all(|(_, k)| *k == int(1)));
            }
        }
    }
}
