//! Normal forms by string peeling.
//!
//! This route depends only on the graph and path layers. A word is first
//! rewritten with `e⁻¹e = r(e)` and `e⁻¹f = 0` until it is a C-separated
//! string. Then the longest reduced prefix `γ₁` is split off as the
//! idempotent `γ₁γ₁⁻¹` and the procedure repeats on the shorter string
//! `γ₁'ν'` obtained by cancelling the overlap `δ δ⁻¹`.

use crate::graph::SeparatedGraph;
use crate::paths::{
    compose_tokens, format_snf, is_c_compatible, positive_part, Letter, ReducedPath, Token,
};

/// Result of the peeling algorithm.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PeeledForm {
    Zero,
    Nonzero {
        /// Maximal positive parts, sorted.
        factors: Vec<ReducedPath>,
        carrier: ReducedPath,
    },
}

impl PeeledForm {
    pub fn render(&self, graph: &SeparatedGraph) -> String {
        match self {
            PeeledForm::Zero => "0".to_string(),
            PeeledForm::Nonzero { factors, carrier } => format_snf(graph, factors, carrier),
        }
    }
}

/// Applies `e⁻¹ e → ε` (the vertex) and `e⁻¹ f → 0` for distinct `e, f` in
/// one block until neither applies. `None` means zero.
fn separate(graph: &SeparatedGraph, letters: &[Letter]) -> Option<Vec<Letter>> {
    let mut stack: Vec<Letter> = Vec::with_capacity(letters.len());
    for &y in letters {
        match stack.last() {
            Some(&x) if x.is_inverse() && y.is_positive() && graph.same_block(x.edge, y.edge) => {
                if x.edge == y.edge {
                    stack.pop();
                } else {
                    return None;
                }
            }
            _ => stack.push(y),
        }
    }
    Some(stack)
}

fn first_cancellation(letters: &[Letter]) -> Option<usize> {
    letters.windows(2).position(|w| w[1] == w[0].inverse())
}

/// Runs the peeling algorithm on a token sequence.
pub fn peel(graph: &SeparatedGraph, tokens: &[Token]) -> PeeledForm {
    let Some(word) = compose_tokens(graph, tokens) else {
        return PeeledForm::Zero;
    };
    let base = word.base();
    let Some(mut gamma) = separate(graph, word.letters()) else {
        return PeeledForm::Zero;
    };
    let path = |letters: &[Letter]| {
        ReducedPath::from_letters(graph, base, letters.to_vec()).expect("reduced prefix of a composable string")
    };

    let mut factors: Vec<ReducedPath> = Vec::new();
    let carrier = loop {
        let Some(i) = first_cancellation(&gamma) else {
            let lambda = path(&gamma);
            factors.push(lambda.clone());
            break lambda;
        };
        let (gamma1, nu) = gamma.split_at(i + 1);
        let overlap = gamma1
            .iter()
            .rev()
            .zip(nu)
            .take_while(|(a, b)| **b == a.inverse())
            .count();
        factors.push(path(gamma1));
        let mut shorter = gamma1[..gamma1.len() - overlap].to_vec();
        shorter.extend_from_slice(&nu[overlap..]);
        match separate(graph, &shorter) {
            Some(next) => gamma = next,
            None => return PeeledForm::Zero,
        }
    };

    for (i, a) in factors.iter().enumerate() {
        for b in &factors[i + 1..] {
            if !is_c_compatible(graph, a, b).expect("factors share the base vertex") {
                return PeeledForm::Zero;
            }
        }
    }

    let mut tops: Vec<ReducedPath> = factors.iter().map(|f| positive_part(graph, f)).collect();
    tops.sort();
    tops.dedup();
    let maximal: Vec<ReducedPath> = tops
        .iter()
        .filter(|p| !tops.iter().any(|q| q != *p && p.is_prefix_of(q)))
        .cloned()
        .collect();
    PeeledForm::Nonzero { factors: maximal, carrier }
}

/// The rendered normal form of a token sequence, or `0`.
pub fn snf_string_algorithm(graph: &SeparatedGraph, tokens: &[Token]) -> String {
    peel(graph, tokens).render(graph)
}
