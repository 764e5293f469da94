//! Randomised and exhaustive laws for the algebra, spectrum and graph layers.

use std::collections::BTreeSet;

use proptest::prelude::*;

use sepgraph::algebra::{e_diff, e_of, int, AlgebraElement, Rational};
use sepgraph::graph::{builtin, free_separation, trivial_separation, GraphOptions, Skeleton};
use sepgraph::oracle::crosscheck::token_alphabet;
use sepgraph::paths::{separated_paths_from, Token};
use sepgraph::semilattice::{enumerate_lower_sets, lower_sets, LowerSet, LowerSetKind, PathTree};
use sepgraph::spectrum::{is_admissible, LocalConfig};
use sepgraph::{Budget, Element, Letter, ReducedPath, Semigroup, SeparatedGraph};

fn test_graphs() -> Vec<SeparatedGraph> {
    vec![builtin::rose2_trivial(), builtin::rose2_free(), builtin::fim2(), builtin::rose1()]
}

fn graph_strategy() -> impl Strategy<Value = SeparatedGraph> {
    (0usize..4).prop_map(|i| test_graphs().swap_remove(i))
}

/// Indices into the token alphabet; taken modulo its length.
fn word_strategy(max_len: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0usize..64, 1..=max_len)
}

fn evaluate(s: &Semigroup<'_>, alphabet: &[Token], word: &[usize]) -> Element {
    let tokens: Vec<Token> = word.iter().map(|&i| alphabet[i % alphabet.len()]).collect();
    s.evaluate(&tokens)
}

/// A small integer combination of basis elements.
type Combination = Vec<(i64, Vec<usize>)>;

fn combination_strategy() -> impl Strategy<Value = Combination> {
    prop::collection::vec((-3i64..=3, word_strategy(4)), 0..4)
}

fn build(s: &Semigroup<'_>, alphabet: &[Token], c: &Combination) -> AlgebraElement<Rational> {
    c.iter().fold(AlgebraElement::zero(), |acc, (k, w)| {
        acc.add(&AlgebraElement::term(&evaluate(s, alphabet, w), int(*k)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn ring_axioms(g in graph_strategy(), a in combination_strategy(), b in combination_strategy(), c in combination_strategy()) {
        let s = Semigroup::separated(&g);
        let alphabet = token_alphabet(&g);
        let (x, y, z) = (build(&s, &alphabet, &a), build(&s, &alphabet, &b), build(&s, &alphabet, &c));

        prop_assert_eq!(x.multiply(&s, &y).multiply(&s, &z), x.multiply(&s, &y.multiply(&s, &z)));
        prop_assert_eq!(x.multiply(&s, &y.add(&z)), x.multiply(&s, &y).add(&x.multiply(&s, &z)));
        prop_assert_eq!(x.add(&y).multiply(&s, &z), x.multiply(&s, &z).add(&y.multiply(&s, &z)));
        prop_assert_eq!(x.add(&y), y.add(&x));
        prop_assert!(x.sub(&x).is_zero());
        prop_assert!(x.multiply(&s, &AlgebraElement::zero()).is_zero());
    }

    #[test]
    fn star_is_an_anti_multiplicative_involution(g in graph_strategy(), a in combination_strategy(), b in combination_strategy(), k in -5i64..=5) {
        let s = Semigroup::separated(&g);
        let alphabet = token_alphabet(&g);
        let (x, y) = (build(&s, &alphabet, &a), build(&s, &alphabet, &b));

        prop_assert_eq!(x.star(&s).star(&s), x.clone());
        prop_assert_eq!(x.multiply(&s, &y).star(&s), y.star(&s).multiply(&s, &x.star(&s)));
        prop_assert_eq!(x.add(&y).star(&s), x.star(&s).add(&y.star(&s)));
        prop_assert_eq!(x.scalar_mul(&int(k)).star(&s), x.star(&s).scalar_mul(&int(k)));
    }

    #[test]
    fn basis_products_have_one_term_with_unit_coefficient(g in graph_strategy(), u in word_strategy(5), v in word_strategy(5)) {
        let s = Semigroup::separated(&g);
        let alphabet = token_alphabet(&g);
        let (a, b) = (evaluate(&s, &alphabet, &u), evaluate(&s, &alphabet, &v));
        let p = AlgebraElement::<Rational>::basis(&a).multiply(&s, &AlgebraElement::basis(&b));
        prop_assert!(p.support_len() <= 1);
        prop_assert!(p.terms().all(|(_, c)| *c == int(1)));
        prop_assert_eq!(p, AlgebraElement::basis(&s.mul(&a, &b)));
    }

    #[test]
    fn normal_forms_reparse_to_the_same_nonzero_element(g in graph_strategy(), w in word_strategy(10)) {
        let s = Semigroup::separated(&g);
        let a = evaluate(&s, &token_alphabet(&g), &w);
        if let Some(text) = s.scheiblich_nf(&a) {
            let back = s.parse_normal_form(&text).expect("rendered normal forms parse");
            prop_assert!(!back.is_zero());
            prop_assert_eq!(back, a);
        } else {
            prop_assert!(a.is_zero());
        }
    }

    #[test]
    fn separation_builders_validate_and_partition(
        n in 1usize..4,
        edges in prop::collection::vec((0usize..4, 0usize..4), 1..6),
    ) {
        let mut skeleton = Skeleton::new();
        for i in 0..n {
            skeleton = skeleton.vertex(&format!("v{i}"));
        }
        for (k, (a, b)) in edges.iter().enumerate() {
            skeleton = skeleton.edge(&format!("e{k}"), &format!("v{}", a % n), &format!("v{}", b % n));
        }
        let options = GraphOptions { allow_isolated: true };
        for g in [trivial_separation(&skeleton, options), free_separation(&skeleton, options)] {
            let g = g.expect("built-in separations always validate");
            for v in g.vertices() {
                let mut from_blocks: Vec<_> = g.blocks_at(v).iter().flat_map(|&b| g.block(b).edges.clone()).collect();
                from_blocks.sort();
                let mut out: Vec<_> = g.out_edges(v).to_vec();
                out.sort();
                prop_assert_eq!(from_blocks, out);
            }
        }
    }
}

/// Every `(λ₀, λ₁)` with `|λ₀| ≤ 1` and `|λ₁| ≤ 3` accepted by `e_diff`.
fn segments(s: &Semigroup<'_>) -> Vec<AlgebraElement<Rational>> {
    let g = s.graph();
    let mut out = Vec::new();
    for v in g.vertices() {
        for l0 in separated_paths_from(g, v, 1) {
            for l1 in separated_paths_from(g, l0.range(), 3) {
                if let Ok(e) = e_diff(s, &l0, &l1) {
                    out.push(e);
                }
            }
        }
    }
    out
}

#[test]
fn difference_projections_are_commuting_idempotents() {
    for g in test_graphs() {
        let s = Semigroup::separated(&g);
        let factors = segments(&s);
        assert!(!factors.is_empty());
        for p in &factors {
            assert!(p.is_idempotent(&s));
            assert_eq!(p.star(&s), *p);
            for q in &factors {
                assert_eq!(p.multiply(&s, q), q.multiply(&s, p));
            }
        }
    }
}

#[test]
fn lower_set_projections_are_self_adjoint_idempotents() {
    for g in test_graphs() {
        let s = Semigroup::separated(&g);
        for v in g.vertices() {
            for set in lower_sets(&g, v, 2, LowerSetKind::All, &mut Budget::new(1_000_000)).unwrap() {
                let e = e_of(&s, &set);
                assert!(e.is_idempotent(&s));
                assert_eq!(e.star(&s), e);
            }
        }
    }
}

/// `{x : red(g x) ∈ T}` with tail `g`'s last letter inverted, judged admissible.
fn all_local_configs_admissible(g: &SeparatedGraph, tree: &PathTree) -> bool {
    tree.iter().all(|p| {
        let letters = tree.local_letters(g, p);
        match LocalConfig::new(g, p.range(), letters.clone(), p.last().map(Letter::inverse)) {
            Some(c) => is_admissible(g, &c),
            None => letters.is_empty() && p.is_vertex(),
        }
    })
}

#[test]
fn pairwise_compatibility_matches_local_admissibility() {
    let cases = [(builtin::rose2_trivial(), 2), (builtin::rose2_free(), 2), (builtin::fim2(), 3), (builtin::rose1(), 3)];
    for (g, depth) in cases {
        let mut both = [0usize; 2];
        for v in g.vertices() {
            let mut visit = |set: LowerSet| {
                let tree = set.tree();
                let pairwise = tree.is_compatible_pairwise(&g);
                assert_eq!(pairwise, all_local_configs_admissible(&g, tree), "{}", tree.display(&g));
                both[pairwise as usize] += 1;
            };
            enumerate_lower_sets(&g, v, depth, LowerSetKind::All, &mut Budget::new(20_000_000), &mut visit).unwrap();
        }
        assert!(both[1] > 0);
        // the enumeration only yields compatible sets; closures of path pairs reach the rest
        for v in g.vertices() {
            let paths = separated_paths_from(&g, v, depth);
            for p in &paths {
                for q in &paths {
                    let tree = PathTree::root(v).with_path(&g, p).with_path(&g, q);
                    let pairwise = tree.is_compatible_pairwise(&g);
                    assert_eq!(pairwise, all_local_configs_admissible(&g, &tree), "{}", tree.display(&g));
                    both[pairwise as usize] += 1;
                }
            }
        }
        assert!(both[0] > 0 || g.blocks().iter().all(|b| b.edges.len() == 1));
    }
}

#[test]
fn free_separation_makes_every_reduced_path_separated() {
    let g = builtin::rose2_free();
    let separated: BTreeSet<ReducedPath> = separated_paths_from(&g, g.vertices().next().unwrap(), 6).into_iter().collect();
    // 4 letters, 3 continuations each: 1 + 4(3⁶ − 1)/2 reduced paths.
    assert_eq!(separated.len(), 1 + 4 * (729 - 1) / 2);
}
