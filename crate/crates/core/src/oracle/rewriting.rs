//! Bounded rewriting closure of the defining relations.
//!
//! Strings over vertices and letters are rewritten with relations (1) to (4)
//! in both directions and with the commutation `u u⋆ w w⋆ ↔ w w⋆ u u⋆` for
//! subwords of length at most half the bound. Only strings of length at most
//! the bound are visited, so a `Connected` verdict is a proof of equality
//! while `Unknown` proves nothing.

use std::collections::{HashSet, VecDeque};

use crate::budget::{Budget, BudgetExceeded};
use crate::graph::SeparatedGraph;
use crate::paths::{all_letters, Letter, Token};

/// Outcome of a bounded search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum Verdict {
    Connected,
    Unknown,
}

/// A rewrite target: another string or the zero element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Node {
    Zero,
    Word(Vec<u8>),
}

/// Token alphabet and relation instances for one graph.
pub struct RewriteSystem<'g> {
    graph: &'g SeparatedGraph,
    tokens: Vec<Token>,
    bound: usize,
}

impl<'g> RewriteSystem<'g> {
    pub fn new(graph: &'g SeparatedGraph, bound: usize) -> Self {
        let mut tokens: Vec<Token> = graph.vertices().map(Token::Vertex).collect();
        tokens.extend(all_letters(graph).into_iter().map(Token::Letter));
        assert!(tokens.len() < 256, "alphabet too large for byte encoding");
        RewriteSystem { graph, tokens, bound }
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn alphabet_size(&self) -> usize {
        self.tokens.len()
    }

    pub fn token(&self, code: u8) -> Token {
        self.tokens[code as usize]
    }

    pub fn encode(&self, word: &[Token]) -> Vec<u8> {
        word.iter()
            .map(|t| self.tokens.iter().position(|s| s == t).expect("token of this graph") as u8)
            .collect()
    }

    pub fn decode(&self, word: &[u8]) -> Vec<Token> {
        word.iter().map(|&c| self.token(c)).collect()
    }

    fn code(&self, t: Token) -> u8 {
        self.tokens.iter().position(|s| *s == t).expect("token of this graph") as u8
    }

    fn star(&self, word: &[u8]) -> Vec<u8> {
        word.iter()
            .rev()
            .map(|&c| match self.token(c) {
                Token::Vertex(_) => c,
                Token::Letter(x) => self.code(Token::Letter(x.inverse())),
            })
            .collect()
    }

    /// All single-step rewrites of `s`. With `expansions` false only the
    /// length-reducing directions of (1) to (4) are produced, together with
    /// the commutation swaps; that suffices for building an undirected
    /// closure over a whole universe.
    pub fn neighbours(&self, s: &[u8], expansions: bool, out: &mut Vec<Node>) {
        let g = self.graph;
        let splice = |i: usize, drop: usize, insert: &[u8]| {
            let mut t = Vec::with_capacity(s.len() + insert.len());
            t.extend_from_slice(&s[..i]);
            t.extend_from_slice(insert);
            t.extend_from_slice(&s[i + drop..]);
            Node::Word(t)
        };

        for i in 0..s.len().saturating_sub(1) {
            let (a, b) = (self.token(s[i]), self.token(s[i + 1]));
            match (a, b) {
                (Token::Vertex(v), Token::Vertex(w)) => {
                    out.push(if v == w { splice(i, 1, &[]) } else { Node::Zero });
                }
                (Token::Vertex(v), Token::Letter(x)) if x.source(g) == v => out.push(splice(i, 1, &[])),
                (Token::Letter(x), Token::Vertex(w)) if x.range(g) == w => out.push(splice(i + 1, 1, &[])),
                (Token::Letter(x), Token::Letter(y))
                    if x.is_inverse() && y.is_positive() && g.same_block(x.edge, y.edge) =>
                {
                    if x.edge == y.edge {
                        out.push(splice(i, 2, &[self.code(Token::Vertex(x.source(g)))]));
                    } else {
                        out.push(Node::Zero);
                    }
                }
                _ => {}
            }
        }

        if expansions && s.len() < self.bound {
            for (i, &c) in s.iter().enumerate() {
                match self.token(c) {
                    Token::Vertex(v) => {
                        out.push(splice(i, 0, &[c]));
                        for e in g.in_edges(v) {
                            let x = Letter::positive(*e);
                            let pair = [self.code(Token::Letter(x.inverse())), self.code(Token::Letter(x))];
                            out.push(splice(i, 1, &pair));
                        }
                    }
                    Token::Letter(x) => {
                        out.push(splice(i, 0, &[self.code(Token::Vertex(x.source(g)))]));
                        out.push(splice(i + 1, 0, &[self.code(Token::Vertex(x.range(g)))]));
                    }
                }
            }
        }

        let half = self.bound / 2;
        for i in 0..s.len() {
            for lu in 1..=half {
                let j = i + 2 * lu;
                if j > s.len() || s[i + lu..j] != self.star(&s[i..i + lu])[..] {
                    continue;
                }
                for lw in 1..=half {
                    let k = j + 2 * lw;
                    if k > s.len() || s[j + lw..k] != self.star(&s[j..j + lw])[..] {
                        continue;
                    }
                    let mut t = Vec::with_capacity(s.len());
                    t.extend_from_slice(&s[..i]);
                    t.extend_from_slice(&s[j..k]);
                    t.extend_from_slice(&s[i..j]);
                    t.extend_from_slice(&s[k..]);
                    if t != s {
                        out.push(Node::Word(t));
                    }
                }
            }
        }
    }

    /// Breadth-first closure from `start`, avoiding expansion through zero.
    fn component(&self, start: &[u8], target: &Node, budget: &mut Budget) -> Result<(bool, bool), BudgetExceeded> {
        let mut seen: HashSet<Vec<u8>> = HashSet::new();
        let mut queue = VecDeque::new();
        let mut reaches_zero = false;
        seen.insert(start.to_vec());
        queue.push_back(start.to_vec());
        let mut buf = Vec::new();
        while let Some(s) = queue.pop_front() {
            if let Node::Word(t) = target {
                if *t == s {
                    return Ok((true, reaches_zero));
                }
            }
            budget.tick()?;
            buf.clear();
            self.neighbours(&s, true, &mut buf);
            for n in buf.drain(..) {
                match n {
                    Node::Zero => reaches_zero = true,
                    Node::Word(t) => {
                        if t.len() <= self.bound && seen.insert(t.clone()) {
                            queue.push_back(t);
                        }
                    }
                }
            }
        }
        Ok((false, reaches_zero))
    }
}

/// Decides whether two words are connected by bounded rewriting.
pub fn bfs_equiv(
    graph: &SeparatedGraph,
    w1: &[Token],
    w2: &[Token],
    len_bound: usize,
    budget: &mut Budget,
) -> Result<Verdict, BudgetExceeded> {
    let bound = len_bound.max(w1.len()).max(w2.len());
    let sys = RewriteSystem::new(graph, bound);
    let (a, b) = (sys.encode(w1), sys.encode(w2));
    let (hit, zero1) = sys.component(&a, &Node::Word(b.clone()), budget)?;
    if hit {
        return Ok(Verdict::Connected);
    }
    if zero1 {
        let (_, zero2) = sys.component(&b, &Node::Zero, budget)?;
        if zero2 {
            return Ok(Verdict::Connected);
        }
    }
    Ok(Verdict::Unknown)
}

/// Union-find over every string of length `1..=bound`, plus a zero node.
pub struct RewriteUniverse<'g> {
    system: RewriteSystem<'g>,
    offsets: Vec<usize>,
    parent: Vec<u32>,
}

impl<'g> RewriteUniverse<'g> {
    pub fn build(graph: &'g SeparatedGraph, bound: usize, budget: &mut Budget) -> Result<Self, BudgetExceeded> {
        let system = RewriteSystem::new(graph, bound);
        let n = system.alphabet_size();
        let mut offsets = vec![0usize];
        let mut total = 0usize;
        for len in 1..=bound {
            offsets.push(total);
            total += n.pow(len as u32);
        }
        let zero = total;
        let mut uni = RewriteUniverse { system, offsets, parent: (0..=zero as u32).collect() };
        let mut buf = Vec::new();
        for len in 1..=bound {
            let mut digits = vec![0u8; len];
            loop {
                budget.tick()?;
                let here = uni.index(&digits);
                buf.clear();
                uni.system.neighbours(&digits, false, &mut buf);
                for node in buf.drain(..) {
                    let there = match node {
                        Node::Zero => zero,
                        Node::Word(t) => uni.index(&t),
                    };
                    uni.union(here, there);
                }
                if !odometer(&mut digits, n) {
                    break;
                }
            }
        }
        Ok(uni)
    }

    pub fn system(&self) -> &RewriteSystem<'g> {
        &self.system
    }

    fn zero(&self) -> usize {
        self.parent.len() - 1
    }

    fn index(&self, word: &[u8]) -> usize {
        let n = self.system.alphabet_size();
        self.offsets[word.len()] + word.iter().fold(0usize, |acc, &d| acc * n + d as usize)
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            let p = self.parent[x] as usize;
            self.parent[x] = self.parent[p];
            x = p;
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.parent[hi] = lo as u32;
        }
    }

    /// Component representative of a word of length `1..=bound`.
    pub fn class_of(&mut self, word: &[Token]) -> usize {
        let code = self.system.encode(word);
        let i = self.index(&code);
        self.find(i)
    }

    pub fn zero_class(&mut self) -> usize {
        let z = self.zero();
        self.find(z)
    }
}

/// Steps a big-endian digit vector to the next word; false after the last one.
pub(crate) fn odometer(digits: &mut [u8], base: usize) -> bool {
    for d in digits.iter_mut().rev() {
        if (*d as usize) + 1 < base {
            *d += 1;
            return true;
        }
        *d = 0;
    }
    false
}
