//! The Munn-tree engine.
//!
//! A nonzero element is a pair `(T, g)`: a finite tree `T` of reduced paths
//! and a carrier path `g`. Three product rules are provided:
//!
//! * [`Level::Free`]: the free inverse semigroup of the graph, where `g ∈ T`;
//! * [`Level::Toeplitz`]: the quotient by `e⁻¹ e = r(e)`, with trees kept in
//!   canonical form and `g₀ ∈ T`;
//! * [`Level::Separated`]: the separated inverse semigroup, which in addition
//!   sends a product to zero when its tree stops being C-compatible.

mod automorphism;

pub use automorphism::{apply_automorphism, enumerate_automorphisms, Automorphism};

use std::fmt;

use thiserror::Error;

use crate::graph::{SeparatedGraph, VertexId};
use crate::paths::{
    compose_tokens, format_snf, is_c_separated_path, omega, parse_path, parse_tokens, positive_part,
    translate, FreeGroupWord, Letter, PathError, ReducedPath, Token,
};
use crate::semilattice::{CanonicalLowerSet, PathTree};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Level {
    Free,
    Toeplitz,
    Separated,
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Level::Free => "free",
            Level::Toeplitz => "toeplitz",
            Level::Separated => "separated",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SemigroupError {
    #[error("elements live at different levels ({0} and {1})")]
    LevelMismatch(Level, Level),
    #[error(transparent)]
    Path(#[from] PathError),
    #[error("malformed normal form: {0}")]
    MalformedNormalForm(String),
    #[error("path is outside the domain of the partial action")]
    DomainViolation,
}

/// A nonzero element `(T, g)`. Field order fixes the deterministic order of
/// basis elements: carrier first, then tree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MunnTree {
    carrier: ReducedPath,
    tree: PathTree,
    level: Level,
}

impl MunnTree {
    pub fn carrier(&self) -> &ReducedPath {
        &self.carrier
    }

    pub fn tree(&self) -> &PathTree {
        &self.tree
    }

    pub fn level(&self) -> Level {
        self.level
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    Zero,
    Nonzero(MunnTree),
}

impl Element {
    pub fn is_zero(&self) -> bool {
        matches!(self, Element::Zero)
    }

    pub fn as_tree(&self) -> Option<&MunnTree> {
        match self {
            Element::Zero => None,
            Element::Nonzero(m) => Some(m),
        }
    }

    pub fn carrier(&self) -> Option<&ReducedPath> {
        self.as_tree().map(|m| &m.carrier)
    }

    pub fn tree(&self) -> Option<&PathTree> {
        self.as_tree().map(|m| &m.tree)
    }

    /// True for zero and for elements whose carrier is a vertex.
    pub fn is_idempotent(&self) -> bool {
        self.as_tree().map_or(true, |m| m.carrier.is_vertex())
    }
}

/// Product rules of one level over a fixed graph.
#[derive(Copy, Clone, Debug)]
pub struct Semigroup<'g> {
    graph: &'g SeparatedGraph,
    level: Level,
}

impl<'g> Semigroup<'g> {
    pub fn new(graph: &'g SeparatedGraph, level: Level) -> Self {
        Semigroup { graph, level }
    }

    pub fn separated(graph: &'g SeparatedGraph) -> Self {
        Self::new(graph, Level::Separated)
    }

    pub fn graph(&self) -> &'g SeparatedGraph {
        self.graph
    }

    pub fn level(&self) -> Level {
        self.level
    }

    fn make(&self, tree: PathTree, carrier: ReducedPath) -> Element {
        Element::Nonzero(MunnTree { carrier, tree, level: self.level })
    }

    pub fn vertex(&self, v: VertexId) -> Element {
        let p = ReducedPath::vertex(v);
        self.make(PathTree::root(v), p)
    }

    pub fn letter(&self, x: Letter) -> Element {
        let e = ReducedPath::vertex(x.source(self.graph))
            .extend(self.graph, x)
            .expect("a single letter is a reduced path");
        if x.is_positive() {
            let tree = PathTree::root(e.source()).with_path(self.graph, &e);
            self.make(tree, e)
        } else {
            let positive = self.letter(x.inverse());
            self.inverse(&positive)
        }
    }

    pub fn token(&self, t: Token) -> Element {
        match t {
            Token::Vertex(v) => self.vertex(v),
            Token::Letter(x) => self.letter(x),
        }
    }

    /// The product of the letters of `g`: `(g₀↓, g)`, or `(g↓, g)` at the
    /// free level. Zero at the separated level when `g` is not C-separated.
    pub fn path_element(&self, g: &ReducedPath) -> Element {
        if self.level == Level::Separated && !is_c_separated_path(self.graph, g) {
            return Element::Zero;
        }
        let shape = match self.level {
            Level::Free => g.clone(),
            Level::Toeplitz | Level::Separated => positive_part(self.graph, g),
        };
        let tree = PathTree::root(g.source()).with_path(self.graph, &shape);
        self.make(tree, g.clone())
    }

    /// The idempotent `(T, v)` for a canonical lower set `T` at `v`.
    pub fn idempotent(&self, set: &CanonicalLowerSet) -> Element {
        self.make(set.tree().clone(), ReducedPath::vertex(set.base()))
    }

    /// Builds `(T, g)` directly, rejecting pairs that are not normal forms
    /// at this level.
    pub fn element(&self, tree: PathTree, carrier: ReducedPath) -> Result<Element, String> {
        let a = self.make(tree, carrier);
        self.validate(&a)?;
        Ok(a)
    }

    fn check_level(&self, m: &MunnTree) -> Result<(), SemigroupError> {
        if m.level != self.level {
            return Err(SemigroupError::LevelMismatch(self.level, m.level));
        }
        Ok(())
    }

    pub fn multiply(&self, a: &Element, b: &Element) -> Result<Element, SemigroupError> {
        let (Element::Nonzero(x), Element::Nonzero(y)) = (a, b) else {
            for e in [a, b] {
                if let Element::Nonzero(m) = e {
                    self.check_level(m)?;
                }
            }
            return Ok(Element::Zero);
        };
        self.check_level(x)?;
        self.check_level(y)?;
        let Some(carrier) = translate(&x.carrier, &y.carrier) else {
            return Ok(Element::Zero);
        };
        let g = self.graph;
        let product = match self.level {
            Level::Free => {
                let moved = y.tree.translated(g, &x.carrier).expect("ranges checked");
                let tree = x.tree.union(&moved).expect("same base");
                self.make(tree, carrier)
            }
            Level::Toeplitz | Level::Separated => {
                let left = x.tree.with_path(g, &x.carrier);
                let right = y.tree.with_path(g, &y.carrier);
                let moved = right.translated(g, &x.carrier).expect("ranges checked");
                let union = left.union(&moved).expect("same base");
                // a failed local check also catches members that are not C-separated
                if self.level == Level::Separated && !union.is_compatible_local(g) {
                    return Ok(Element::Zero);
                }
                self.make(union.normalized(g), carrier)
            }
        };
        Ok(product)
    }

    /// Panicking variant of [`Semigroup::multiply`] for elements known to
    /// share this semigroup's level.
    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        self.multiply(a, b).expect("elements of one level")
    }

    pub fn inverse(&self, a: &Element) -> Element {
        let Element::Nonzero(m) = a else { return Element::Zero };
        let g = self.graph;
        let inv = m.carrier.inverse();
        let tree = match m.level {
            Level::Free => m.tree.translated(g, &inv).expect("ranges match"),
            Level::Toeplitz | Level::Separated => m
                .tree
                .with_path(g, &m.carrier)
                .translated(g, &inv)
                .expect("ranges match")
                .normalized(g),
        };
        Element::Nonzero(MunnTree { carrier: inv, tree, level: m.level })
    }

    /// Left fold of the product over the generator images of the tokens.
    pub fn evaluate(&self, tokens: &[Token]) -> Element {
        let mut acc: Option<Element> = None;
        for &t in tokens {
            let x = self.token(t);
            acc = Some(match acc {
                None => x,
                Some(a) => self.mul(&a, &x),
            });
            if acc.as_ref().is_some_and(Element::is_zero) {
                return Element::Zero;
            }
        }
        acc.unwrap_or(Element::Zero)
    }

    pub fn parse_word(&self, text: &str) -> Result<Element, SemigroupError> {
        Ok(self.evaluate(&parse_tokens(self.graph, text)?))
    }

    /// `(γ₁)(γ₂)…(γₙ) | λ` with `{γᵢ} = max(T)` and `λ = g`; `None` for zero.
    pub fn scheiblich_nf(&self, a: &Element) -> Option<String> {
        let m = a.as_tree()?;
        Some(format_snf(self.graph, &m.tree.max_elements(self.graph), &m.carrier))
    }

    /// The normal form, or `0`.
    pub fn render(&self, a: &Element) -> String {
        self.scheiblich_nf(a).unwrap_or_else(|| "0".to_string())
    }

    /// Parses `(p₁)…(pₙ) | λ` (or `0`) and evaluates `∏ pᵢpᵢ⁻¹ · λ`.
    pub fn parse_normal_form(&self, text: &str) -> Result<Element, SemigroupError> {
        let text = text.trim();
        if text == "0" {
            return Ok(Element::Zero);
        }
        let malformed = || SemigroupError::MalformedNormalForm(text.to_string());
        let (factors, carrier) = text.split_once('|').ok_or_else(malformed)?;
        let carrier = parse_path(self.graph, carrier)?;
        let mut rest = factors.trim();
        let mut acc: Option<Element> = None;
        while !rest.is_empty() {
            let inner = rest.strip_prefix('(').ok_or_else(malformed)?;
            let close = inner.find(')').ok_or_else(malformed)?;
            let p = parse_path(self.graph, &inner[..close])?;
            let pe = self.path_element(&p);
            let f = self.mul(&pe, &self.inverse(&pe));
            acc = Some(match acc {
                None => f,
                Some(a) => self.mul(&a, &f),
            });
            rest = inner[close + 1..].trim_start();
        }
        let acc = acc.ok_or_else(malformed)?;
        Ok(self.mul(&acc, &self.path_element(&carrier)))
    }

    /// The natural partial order: `a ≤ b` iff the carriers agree and the tree
    /// of `b` is contained in the tree of `a`.
    pub fn natural_leq(&self, a: &Element, b: &Element) -> bool {
        match (a, b) {
            (Element::Zero, _) => true,
            (_, Element::Zero) => false,
            (Element::Nonzero(x), Element::Nonzero(y)) => {
                x.carrier == y.carrier && y.tree.is_subset(&x.tree)
            }
        }
    }

    /// `ω(g)`; `None` for zero.
    pub fn grading(&self, a: &Element) -> Option<FreeGroupWord> {
        a.carrier().map(omega)
    }

    /// Whether `T` lies in the domain of `θ_g`, which is `D_{g⁻¹}`:
    /// `T` sits at `r(g)` and contains `(g⁻¹)₀`.
    pub fn theta_domain_contains(&self, g: &ReducedPath, t: &CanonicalLowerSet) -> bool {
        let inv = g.inverse();
        t.base() == inv.source() && t.contains(&positive_part(self.graph, &inv))
    }

    /// `θ_g(T) = (g · (T ∪ (g⁻¹)↓))₀`.
    pub fn theta_apply(&self, g: &ReducedPath, t: &CanonicalLowerSet) -> Result<CanonicalLowerSet, SemigroupError> {
        if !self.theta_domain_contains(g, t) {
            return Err(SemigroupError::DomainViolation);
        }
        let graph = self.graph;
        let moved = t
            .with_path(graph, &g.inverse())
            .translated(graph, g)
            .expect("base checked")
            .normalized(graph);
        CanonicalLowerSet::try_from_tree(graph, moved).map_err(|_| SemigroupError::DomainViolation)
    }

    /// Checks the structural invariants of an element at this level.
    pub fn validate(&self, a: &Element) -> Result<(), String> {
        let Element::Nonzero(m) = a else { return Ok(()) };
        let g = self.graph;
        if m.level != self.level {
            return Err(format!("level {} instead of {}", m.level, self.level));
        }
        if m.tree.base() != m.carrier.source() {
            return Err("carrier does not start at the tree's base".into());
        }
        if PathTree::from_set(g, m.tree.base(), m.tree.paths().clone()).is_err() {
            return Err("tree is not prefix-closed".into());
        }
        match self.level {
            Level::Free => {
                if !m.tree.contains(&m.carrier) {
                    return Err("carrier is not in the tree".into());
                }
            }
            Level::Toeplitz | Level::Separated => {
                if !m.tree.is_canonical(g) {
                    return Err("tree is not canonical".into());
                }
                if !m.tree.contains(&positive_part(g, &m.carrier)) {
                    return Err("positive part of the carrier is not in the tree".into());
                }
                if self.level == Level::Separated {
                    let full = m.tree.with_path(g, &m.carrier);
                    if !full.is_compatible_pairwise(g) {
                        return Err("tree with carrier is not C-compatible".into());
                    }
                }
            }
        }
        Ok(())
    }

    /// Recomputes an element at another level by replaying its normal form
    /// word. Used to compare levels.
    pub fn word_of(&self, a: &Element) -> Option<Vec<Token>> {
        let m = a.as_tree()?;
        let mut tokens = vec![Token::Vertex(m.tree.base())];
        for p in m.tree.max_elements(self.graph) {
            tokens.extend(p.letters().iter().map(|&x| Token::Letter(x)));
            tokens.extend(p.letters().iter().rev().map(|&x| Token::Letter(x.inverse())));
        }
        tokens.extend(m.carrier.letters().iter().map(|&x| Token::Letter(x)));
        debug_assert!(compose_tokens(self.graph, &tokens).is_some());
        Some(tokens)
    }

    /// Normalizes a free-level element into the Toeplitz level.
    pub fn to_toeplitz(&self, a: &Element) -> Element {
        match a {
            Element::Zero => Element::Zero,
            Element::Nonzero(m) => Element::Nonzero(MunnTree {
                carrier: m.carrier.clone(),
                tree: m.tree.normalized(self.graph),
                level: Level::Toeplitz,
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::builtin;
    use crate::semilattice::lower_closure;

    pub(crate) const U: &str = "e e ~e f ~f e f f ~f e ~e ~f ~f";

    #[test]
    fn golden_normal_form_of_u() {
        let g = builtin::rose2_free();
        let s = Semigroup::separated(&g);
        let u = s.parse_word(U).unwrap();
        assert_eq!(s.render(&u), "(e f)(e e f f)(e e f e) | e e ~f");
        assert_eq!(s.grading(&u).unwrap().display(&g).to_string(), "e e ~f");
        let idem = s.mul(&u, &s.inverse(&u));
        assert_eq!(s.render(&idem), "(e f)(e e f f)(e e f e) | v");
    }

    #[test]
    fn free_level_keeps_inverse_leaf() {
        let g = builtin::rose2_free();
        let s = Semigroup::new(&g, Level::Free);
        let u = s.parse_word(U).unwrap();
        assert_eq!(s.render(&u), "(e f)(e e f f)(e e ~f)(e e f e) | e e ~f");
    }

    #[test]
    fn generator_relations() {
        let g = builtin::rose2_trivial();
        let s = Semigroup::separated(&g);
        let v = s.vertex(VertexId(0));
        assert_eq!(s.mul(&v, &v), v);
        assert!(v.is_idempotent());
        assert_eq!(s.parse_word("~e e").unwrap(), v);
        assert_eq!(s.parse_word("~e f").unwrap(), Element::Zero);
        let t = Semigroup::new(&g, Level::Toeplitz);
        assert_eq!(t.parse_word("~e e").unwrap(), t.vertex(VertexId(0)));
        assert_ne!(t.parse_word("~e f").unwrap(), Element::Zero);
    }

    #[test]
    fn product_examples() {
        let t = builtin::rose2_trivial();
        let st = Semigroup::separated(&t);
        let ee = st.parse_word("e ~e").unwrap();
        let ff = st.parse_word("f ~f").unwrap();
        assert_eq!(st.mul(&ee, &ff), Element::Zero);
        let f = builtin::rose2_free();
        let sf = Semigroup::separated(&f);
        let p = sf.mul(&sf.parse_word("e ~e").unwrap(), &sf.parse_word("f ~f").unwrap());
        assert_eq!(p.tree().unwrap().display(&f).to_string(), "{v, e, f}");
        assert!(p.carrier().unwrap().is_vertex());
    }

    #[test]
    fn example_relations_in_rose2_free() {
        let g = builtin::rose2_free();
        let s = Semigroup::separated(&g);
        assert_eq!(s.parse_word("~e e").unwrap(), s.vertex(VertexId(0)));
        assert_eq!(s.parse_word("e ~e f ~f").unwrap(), s.parse_word("f ~f e ~e").unwrap());
    }

    #[test]
    fn bicyclic_relation() {
        let g = builtin::rose1();
        let s = Semigroup::separated(&g);
        assert_eq!(s.parse_word("e ~e e").unwrap(), s.parse_word("e").unwrap());
        assert_ne!(s.parse_word("e ~e").unwrap(), s.parse_word("v").unwrap());
    }

    #[test]
    fn inverse_examples() {
        let g = builtin::rose2_free();
        let s = Semigroup::separated(&g);
        assert_eq!(s.inverse(&Element::Zero), Element::Zero);
        let e = s.parse_word("e").unwrap();
        let inv = s.inverse(&e);
        assert_eq!(s.render(&inv), "(v) | ~e");
        assert_eq!(s.inverse(&inv), e);
    }

    #[test]
    fn normal_forms_round_trip() {
        let g = builtin::rose2_free();
        let s = Semigroup::separated(&g);
        for w in [U, "e", "~e ~f", "v", "e ~e f ~f", "f f ~e ~e e"] {
            let a = s.parse_word(w).unwrap();
            let back = s.parse_normal_form(&s.render(&a)).unwrap();
            assert_eq!(back, a, "{w}");
        }
        assert_eq!(s.parse_normal_form("0").unwrap(), Element::Zero);
        assert!(s.parse_normal_form("(e | e").is_err());
    }

    #[test]
    fn order_examples() {
        let g = builtin::rose2_free();
        let s = Semigroup::separated(&g);
        let a = s.parse_word("e ~e f ~f").unwrap();
        let b = s.parse_word("e ~e").unwrap();
        assert!(s.natural_leq(&a, &a));
        assert!(s.natural_leq(&a, &b));
        assert!(!s.natural_leq(&b, &a));
        assert!(s.natural_leq(&Element::Zero, &a));
    }

    #[test]
    fn theta_examples() {
        let g = builtin::rose2_free();
        let s = Semigroup::separated(&g);
        let v = ReducedPath::vertex(VertexId(0));
        let root = CanonicalLowerSet::root(VertexId(0));
        assert_eq!(s.theta_apply(&v, &root).unwrap(), root);
        let e = parse_path(&g, "e").unwrap();
        let image = s.theta_apply(&e, &root).unwrap();
        assert_eq!(image.display(&g).to_string(), "{v, e}");
        assert_eq!(s.theta_apply(&e.inverse(), &image).unwrap(), root);
        let f_set = lower_closure(&g, &[parse_path(&g, "f").unwrap()]).unwrap();
        let f_set = crate::semilattice::normalize_0(&g, &f_set);
        assert!(s.theta_domain_contains(&e, &f_set));
        let f_inv = parse_path(&g, "~f").unwrap();
        assert!(!s.theta_domain_contains(&f_inv, &root));
        assert!(s.theta_domain_contains(&f_inv, &f_set));
        assert!(matches!(s.theta_apply(&f_inv, &root), Err(SemigroupError::DomainViolation)));
    }

    #[test]
    fn level_mismatch_is_an_error() {
        let g = builtin::rose2_free();
        let a = Semigroup::new(&g, Level::Free).parse_word("e").unwrap();
        let s = Semigroup::separated(&g);
        assert!(matches!(s.multiply(&a, &a), Err(SemigroupError::LevelMismatch(..))));
    }

    #[test]
    fn unknown_tokens_are_rejected() {
        let g = builtin::rose2_free();
        let s = Semigroup::separated(&g);
        assert!(matches!(s.parse_word("e q"), Err(SemigroupError::Path(PathError::UnknownToken(_)))));
    }

    #[test]
    fn non_composable_words_are_zero() {
        let g = builtin::fim2();
        let s = Semigroup::separated(&g);
        assert_eq!(s.parse_word("e1 e2").unwrap(), Element::Zero);
        assert_eq!(s.parse_word("v x1").unwrap(), Element::Zero);
        assert_ne!(s.parse_word("e1 ~f1").unwrap(), Element::Zero);
    }
}
