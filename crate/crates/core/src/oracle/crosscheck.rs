//! Randomised agreement checks between the engine and the oracles.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::graph::SeparatedGraph;
use crate::paths::{all_letters, Token};
use crate::semigroup::Semigroup;

use super::peeling::snf_string_algorithm;
use super::rewriting::{Node, RewriteSystem};

#[derive(Clone, Debug, Serialize)]
pub struct Disagreement {
    pub word: String,
    pub engine: String,
    pub oracle: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CrosscheckReport {
    pub samples: usize,
    pub max_len: usize,
    pub seed: u64,
    /// Words whose engine and peeling normal forms coincide.
    pub agreements: usize,
    pub disagreements: usize,
    pub first_disagreements: Vec<Disagreement>,
    /// Random rewrite walks; each endpoint must evaluate like its start.
    pub rewrite_walks: usize,
    pub rewrite_violations: usize,
    pub budgets_hit: usize,
}

impl CrosscheckReport {
    pub fn is_clean(&self) -> bool {
        self.disagreements == 0 && self.rewrite_violations == 0
    }

    fn merge(&mut self, other: CrosscheckReport) {
        self.agreements += other.agreements;
        self.disagreements += other.disagreements;
        self.rewrite_walks += other.rewrite_walks;
        self.rewrite_violations += other.rewrite_violations;
        self.budgets_hit += other.budgets_hit;
        for d in other.first_disagreements {
            if self.first_disagreements.len() < MAX_REPORTED {
                self.first_disagreements.push(d);
            }
        }
    }
}

const MAX_REPORTED: usize = 5;
const WALK_STEPS: usize = 6;

/// All tokens of a graph: vertices first, then letters.
pub fn token_alphabet(graph: &SeparatedGraph) -> Vec<Token> {
    let mut tokens: Vec<Token> = graph.vertices().map(Token::Vertex).collect();
    tokens.extend(all_letters(graph).into_iter().map(Token::Letter));
    tokens
}

/// A word of uniform length in `1..=max_len` with uniform tokens.
pub fn random_word<R: Rng>(rng: &mut R, alphabet: &[Token], max_len: usize) -> Vec<Token> {
    let len = rng.gen_range(1..=max_len.max(1));
    (0..len).map(|_| alphabet[rng.gen_range(0..alphabet.len())]).collect()
}

fn render_word(graph: &SeparatedGraph, w: &[Token]) -> String {
    w.iter().map(|t| t.display(graph)).collect::<Vec<_>>().join(" ")
}

fn run_chunk(graph: &SeparatedGraph, samples: usize, max_len: usize, seed: u64) -> CrosscheckReport {
    let s = Semigroup::separated(graph);
    let alphabet = token_alphabet(graph);
    let system = RewriteSystem::new(graph, max_len + 2);
    let mut rng = StdRng::seed_from_u64(seed);
    let mut report = CrosscheckReport::default();
    let mut buf = Vec::new();

    for _ in 0..samples {
        let w = random_word(&mut rng, &alphabet, max_len);
        let engine = s.evaluate(&w);
        let (e, o) = (s.render(&engine), snf_string_algorithm(graph, &w));
        if e == o {
            report.agreements += 1;
        } else {
            report.disagreements += 1;
            if report.first_disagreements.len() < MAX_REPORTED {
                report.first_disagreements.push(Disagreement { word: render_word(graph, &w), engine: e, oracle: o });
            }
        }

        report.rewrite_walks += 1;
        let mut cur = system.encode(&w);
        let mut end_is_zero = false;
        for _ in 0..WALK_STEPS {
            buf.clear();
            system.neighbours(&cur, true, &mut buf);
            buf.retain(|n| !matches!(n, Node::Word(t) if t.len() > system.bound()));
            if buf.is_empty() {
                break;
            }
            match buf.swap_remove(rng.gen_range(0..buf.len())) {
                Node::Zero => {
                    end_is_zero = true;
                    break;
                }
                Node::Word(t) => cur = t,
            }
        }
        let ok = if end_is_zero { engine.is_zero() } else { s.evaluate(&system.decode(&cur)) == engine };
        if !ok {
            report.rewrite_violations += 1;
        }
    }
    report
}

/// Samples random words and compares the engine with the peeling oracle and
/// with random rewrite walks. `threads > 1` splits the samples into
/// independently seeded chunks.
pub fn crosscheck(graph: &SeparatedGraph, samples: usize, max_len: usize, seed: u64, threads: usize) -> CrosscheckReport {
    let threads = threads.max(1);
    let mut report = CrosscheckReport { samples, max_len, seed, ..Default::default() };
    if threads == 1 {
        report.merge(run_chunk(graph, samples, max_len, seed));
        return report;
    }
    let per = samples.div_ceil(threads);
    let parts: Vec<CrosscheckReport> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..threads)
            .map(|i| {
                let n = per.min(samples.saturating_sub(i * per));
                let chunk_seed = seed.wrapping_add(i as u64);
                scope.spawn(move || run_chunk(graph, n, max_len, chunk_seed))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("crosscheck worker panicked")).collect()
    });
    for p in parts {
        report.merge(p);
    }
    report
}
