//! Separated graphs: vertices, edges, and a partition of the outgoing edges
//! at every non-sink vertex into blocks.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

/// Index of a vertex in declaration order.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub u32);

/// Index of an edge in declaration order.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeId(pub u32);

/// Index of a block in the graph's block list.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockId(pub u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl EdgeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl BlockId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Whether a block is finite or stands for an infinite set of which only the
/// listed edges are named.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Cardinality {
    Finite,
    Infinite,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub source: VertexId,
    pub range: VertexId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub name: String,
    pub source: VertexId,
    pub edges: Vec<EdgeId>,
    pub cardinality: Cardinality,
}

impl Block {
    pub fn is_finite(&self) -> bool {
        self.cardinality == Cardinality::Finite
    }
}

/// A name in the shared vertex/edge namespace.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Symbol {
    Vertex(VertexId),
    Edge(EdgeId),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: syntax error: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: invalid identifier `{name}`")]
    InvalidIdentifier { line: usize, name: String },
    #[error("line {line}: duplicate identifier `{name}`")]
    DuplicateIdentifier { line: usize, name: String },
    #[error("line {line}: unknown identifier `{name}`")]
    UnknownIdentifier { line: usize, name: String },
    #[error("line {line}: `{name}` is not an edge")]
    NotAnEdge { line: usize, name: String },
    #[error("line {line}: `{name}` is not a vertex")]
    NotAVertex { line: usize, name: String },
    #[error("block `{block}`: edge `{edge}` does not start at the block's source")]
    BlockSourceMismatch { block: String, edge: String },
    #[error("block `{block}` lists edge `{edge}` twice")]
    RepeatedBlockEdge { block: String, edge: String },
    #[error("block `{block}` is empty")]
    EmptyBlock { block: String },
    #[error("edge `{edge}` lies in {count} blocks; exactly one is required")]
    PartitionViolation { edge: String, count: usize },
    #[error("line {line}: `separation` cannot be combined with `block` lines")]
    MixedSeparation { line: usize },
    #[error("isolated vertex `{name}` (pass the isolated-vertex override to allow it)")]
    IsolatedVertex { name: String },
}

/// Parsing and validation switches.
#[derive(Copy, Clone, Debug, Default)]
pub struct GraphOptions {
    /// Accept vertices with no incoming and no outgoing edges.
    pub allow_isolated: bool,
}

/// A validated separated graph. Immutable after construction.
#[derive(Clone, Debug)]
pub struct SeparatedGraph {
    vertex_names: Vec<String>,
    edges: Vec<Edge>,
    blocks: Vec<Block>,
    block_of_edge: Vec<BlockId>,
    out_edges: Vec<Vec<EdgeId>>,
    in_edges: Vec<Vec<EdgeId>>,
    out_blocks: Vec<Vec<BlockId>>,
    symbols: HashMap<String, Symbol>,
}

/// Vertices and edges without a separation.
#[derive(Clone, Debug, Default)]
pub struct Skeleton {
    pub vertices: Vec<String>,
    /// (name, source, range)
    pub edges: Vec<(String, String, String)>,
}

impl Skeleton {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(mut self, name: &str) -> Self {
        self.vertices.push(name.to_string());
        self
    }

    pub fn edge(mut self, name: &str, source: &str, range: &str) -> Self {
        self.edges
            .push((name.to_string(), source.to_string(), range.to_string()));
        self
    }
}

/// Validates an identifier token. Commas are rejected as well because they
/// separate path lists on the command line.
pub fn is_valid_identifier(name: &str) -> bool {
    !name.is_empty()
        && !name
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, '~' | '(' | ')' | '|' | ',' | '#'))
}

#[derive(Clone, Debug)]
enum SeparationSpec {
    Explicit(Vec<BlockDecl>),
    Trivial,
    Free,
}

#[derive(Clone, Debug)]
struct BlockDecl {
    line: usize,
    name: String,
    cardinality: Cardinality,
    edges: Vec<(usize, String)>,
}

/// Incremental construction of a separated graph; `build` validates.
#[derive(Clone, Debug)]
struct Builder {
    vertices: Vec<(usize, String)>,
    edges: Vec<(usize, String, String, String)>,
    separation: SeparationSpec,
}

impl Builder {
    fn new() -> Self {
        Builder {
            vertices: Vec::new(),
            edges: Vec::new(),
            separation: SeparationSpec::Explicit(Vec::new()),
        }
    }

    fn build(self, options: GraphOptions) -> Result<SeparatedGraph, GraphError> {
        let mut symbols: HashMap<String, Symbol> = HashMap::new();
        let mut vertex_names = Vec::new();
        for (line, name) in &self.vertices {
            if !is_valid_identifier(name) {
                return Err(GraphError::InvalidIdentifier { line: *line, name: name.clone() });
            }
            let id = VertexId(vertex_names.len() as u32);
            if symbols.insert(name.clone(), Symbol::Vertex(id)).is_some() {
                return Err(GraphError::DuplicateIdentifier { line: *line, name: name.clone() });
            }
            vertex_names.push(name.clone());
        }
        let mut edges = Vec::new();
        for (line, name, _, _) in &self.edges {
            if !is_valid_identifier(name) {
                return Err(GraphError::InvalidIdentifier { line: *line, name: name.clone() });
            }
            let id = EdgeId(edges.len() as u32);
            if symbols.insert(name.clone(), Symbol::Edge(id)).is_some() {
                return Err(GraphError::DuplicateIdentifier { line: *line, name: name.clone() });
            }
            // endpoints are resolved below, once every vertex is known
            edges.push(Edge { name: name.clone(), source: VertexId(0), range: VertexId(0) });
        }
        let vertex_of = |line: usize, name: &str| -> Result<VertexId, GraphError> {
            match symbols.get(name) {
                Some(Symbol::Vertex(v)) => Ok(*v),
                Some(Symbol::Edge(_)) => Err(GraphError::NotAVertex { line, name: name.to_string() }),
                None => Err(GraphError::UnknownIdentifier { line, name: name.to_string() }),
            }
        };
        for (i, (line, _, src, rng)) in self.edges.iter().enumerate() {
            edges[i].source = vertex_of(*line, src)?;
            edges[i].range = vertex_of(*line, rng)?;
        }

        let n = vertex_names.len();
        let mut out_edges = vec![Vec::new(); n];
        let mut in_edges = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            out_edges[e.source.index()].push(EdgeId(i as u32));
            in_edges[e.range.index()].push(EdgeId(i as u32));
        }

        let blocks: Vec<Block> = match self.separation {
            SeparationSpec::Trivial => (0..n)
                .filter(|&v| !out_edges[v].is_empty())
                .map(|v| Block {
                    name: vertex_names[v].clone(),
                    source: VertexId(v as u32),
                    edges: out_edges[v].clone(),
                    cardinality: Cardinality::Finite,
                })
                .collect(),
            SeparationSpec::Free => edges
                .iter()
                .enumerate()
                .map(|(i, e)| Block {
                    name: e.name.clone(),
                    source: e.source,
                    edges: vec![EdgeId(i as u32)],
                    cardinality: Cardinality::Finite,
                })
                .collect(),
            SeparationSpec::Explicit(decls) => {
                let mut blocks = Vec::new();
                let mut names = BTreeSet::new();
                for decl in decls {
                    if !is_valid_identifier(&decl.name) {
                        return Err(GraphError::InvalidIdentifier { line: decl.line, name: decl.name });
                    }
                    if !names.insert(decl.name.clone()) {
                        return Err(GraphError::DuplicateIdentifier { line: decl.line, name: decl.name });
                    }
                    if decl.edges.is_empty() {
                        return Err(GraphError::EmptyBlock { block: decl.name });
                    }
                    let mut ids = Vec::new();
                    for (line, name) in &decl.edges {
                        let id = match symbols.get(name) {
                            Some(Symbol::Edge(e)) => *e,
                            Some(Symbol::Vertex(_)) => {
                                return Err(GraphError::NotAnEdge { line: *line, name: name.clone() })
                            }
                            None => {
                                return Err(GraphError::UnknownIdentifier { line: *line, name: name.clone() })
                            }
                        };
                        if ids.contains(&id) {
                            return Err(GraphError::RepeatedBlockEdge { block: decl.name, edge: name.clone() });
                        }
                        ids.push(id);
                    }
                    let source = edges[ids[0].index()].source;
                    if let Some(bad) = ids.iter().find(|e| edges[e.index()].source != source) {
                        return Err(GraphError::BlockSourceMismatch {
                            block: decl.name,
                            edge: edges[bad.index()].name.clone(),
                        });
                    }
                    blocks.push(Block { name: decl.name, source, edges: ids, cardinality: decl.cardinality });
                }
                blocks
            }
        };

        let mut count = vec![0usize; edges.len()];
        let mut block_of_edge = vec![BlockId(0); edges.len()];
        let mut out_blocks = vec![Vec::new(); n];
        for (b, block) in blocks.iter().enumerate() {
            out_blocks[block.source.index()].push(BlockId(b as u32));
            for e in &block.edges {
                count[e.index()] += 1;
                block_of_edge[e.index()] = BlockId(b as u32);
            }
        }
        if let Some(i) = count.iter().position(|&c| c != 1) {
            return Err(GraphError::PartitionViolation { edge: edges[i].name.clone(), count: count[i] });
        }
        if !options.allow_isolated {
            if let Some(v) = (0..n).find(|&v| out_edges[v].is_empty() && in_edges[v].is_empty()) {
                return Err(GraphError::IsolatedVertex { name: vertex_names[v].clone() });
            }
        }

        Ok(SeparatedGraph { vertex_names, edges, blocks, block_of_edge, out_edges, in_edges, out_blocks, symbols })
    }
}

fn syntax(line: usize, message: impl Into<String>) -> GraphError {
    GraphError::Syntax { line, message: message.into() }
}

/// Parses a graph file with default options (isolated vertices rejected).
pub fn parse_graph(text: &str) -> Result<SeparatedGraph, GraphError> {
    parse_graph_with(text, GraphOptions::default())
}

/// Parses the line-oriented graph format:
///
/// ```text
/// vertex <id>
/// edge <id> <src> <rng>
/// block <id> finite|infinite <edge>...
/// separation trivial|free
/// ```
///
/// `#` starts a comment. `separation` may not be mixed with `block` lines.
pub fn parse_graph_with(text: &str, options: GraphOptions) -> Result<SeparatedGraph, GraphError> {
    let mut builder = Builder::new();
    let mut separation_line: Option<usize> = None;
    let mut first_block_line: Option<usize> = None;
    let mut decls = Vec::new();
    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let Some((&keyword, args)) = tokens.split_first() else { continue };
        match keyword {
            "vertex" => {
                let [name] = args else {
                    return Err(syntax(line, "expected `vertex <id>`"));
                };
                builder.vertices.push((line, name.to_string()));
            }
            "edge" => {
                let [name, src, rng] = args else {
                    return Err(syntax(line, "expected `edge <id> <src> <rng>`"));
                };
                builder.edges.push((line, name.to_string(), src.to_string(), rng.to_string()));
            }
            "block" => {
                if separation_line.is_some() {
                    return Err(GraphError::MixedSeparation { line });
                }
                first_block_line.get_or_insert(line);
                let [name, card, edges @ ..] = args else {
                    return Err(syntax(line, "expected `block <id> finite|infinite <edge>...`"));
                };
                let cardinality = match *card {
                    "finite" => Cardinality::Finite,
                    "infinite" => Cardinality::Infinite,
                    other => return Err(syntax(line, format!("expected `finite` or `infinite`, found `{other}`"))),
                };
                decls.push(BlockDecl {
                    line,
                    name: name.to_string(),
                    cardinality,
                    edges: edges.iter().map(|e| (line, e.to_string())).collect(),
                });
            }
            "separation" => {
                if first_block_line.is_some() {
                    return Err(GraphError::MixedSeparation { line });
                }
                if separation_line.is_some() {
                    return Err(syntax(line, "`separation` given twice"));
                }
                separation_line = Some(line);
                builder.separation = match args {
                    ["trivial"] => SeparationSpec::Trivial,
                    ["free"] => SeparationSpec::Free,
                    _ => return Err(syntax(line, "expected `separation trivial|free`")),
                };
            }
            other => return Err(syntax(line, format!("unknown keyword `{other}`"))),
        }
    }
    if separation_line.is_none() {
        builder.separation = SeparationSpec::Explicit(decls);
    }
    builder.build(options)
}

fn from_skeleton(skeleton: &Skeleton, separation: SeparationSpec, options: GraphOptions) -> Result<SeparatedGraph, GraphError> {
    let builder = Builder {
        vertices: skeleton.vertices.iter().map(|v| (0, v.clone())).collect(),
        edges: skeleton
            .edges
            .iter()
            .map(|(n, s, r)| (0, n.clone(), s.clone(), r.clone()))
            .collect(),
        separation,
    };
    builder.build(options)
}

/// One block per non-sink vertex, containing all of its outgoing edges.
/// Blocks are named after their source vertex.
pub fn trivial_separation(skeleton: &Skeleton, options: GraphOptions) -> Result<SeparatedGraph, GraphError> {
    from_skeleton(skeleton, SeparationSpec::Trivial, options)
}

/// One singleton block per edge, named after the edge.
pub fn free_separation(skeleton: &Skeleton, options: GraphOptions) -> Result<SeparatedGraph, GraphError> {
    from_skeleton(skeleton, SeparationSpec::Free, options)
}

impl SeparatedGraph {
    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertex_names.len() as u32).map(VertexId)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len() as u32).map(EdgeId)
    }

    pub fn block_ids(&self) -> impl Iterator<Item = BlockId> + '_ {
        (0..self.blocks.len() as u32).map(BlockId)
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertex_names[v.index()]
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e.index()]
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edges[e.index()].name
    }

    pub fn source(&self, e: EdgeId) -> VertexId {
        self.edges[e.index()].source
    }

    pub fn range(&self, e: EdgeId) -> VertexId {
        self.edges[e.index()].range
    }

    pub fn block(&self, b: BlockId) -> &Block {
        &self.blocks[b.index()]
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn block_of(&self, e: EdgeId) -> BlockId {
        self.block_of_edge[e.index()]
    }

    pub fn same_block(&self, e: EdgeId, f: EdgeId) -> bool {
        self.block_of_edge[e.index()] == self.block_of_edge[f.index()]
    }

    pub fn out_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.out_edges[v.index()]
    }

    pub fn in_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.in_edges[v.index()]
    }

    pub fn blocks_at(&self, v: VertexId) -> &[BlockId] {
        &self.out_blocks[v.index()]
    }

    pub fn lookup(&self, name: &str) -> Option<Symbol> {
        self.symbols.get(name).copied()
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        match self.lookup(name) {
            Some(Symbol::Vertex(v)) => Some(v),
            _ => None,
        }
    }

    pub fn edge_by_name(&self, name: &str) -> Option<EdgeId> {
        match self.lookup(name) {
            Some(Symbol::Edge(e)) => Some(e),
            _ => None,
        }
    }

    pub fn block_by_name(&self, name: &str) -> Option<BlockId> {
        self.blocks.iter().position(|b| b.name == name).map(|i| BlockId(i as u32))
    }

    pub fn is_sink(&self, v: VertexId) -> bool {
        self.out_edges[v.index()].is_empty()
    }

    pub fn is_finitely_separated(&self) -> bool {
        self.blocks.iter().all(Block::is_finite)
    }

    /// Vertices receiving no edges whose blocks are all flagged infinite.
    pub fn infinite_sources(&self) -> BTreeSet<VertexId> {
        self.vertices()
            .filter(|&v| {
                self.in_edges(v).is_empty()
                    && self.blocks_at(v).iter().all(|&b| !self.block(b).is_finite())
            })
            .collect()
    }

    pub fn isolated_vertices(&self) -> BTreeSet<VertexId> {
        self.vertices()
            .filter(|&v| self.out_edges(v).is_empty() && self.in_edges(v).is_empty())
            .collect()
    }

    /// Returns a copy with the given blocks' cardinality flags replaced.
    pub fn with_cardinality(&self, blocks: &[BlockId], cardinality: Cardinality) -> SeparatedGraph {
        let mut g = self.clone();
        for b in blocks {
            g.blocks[b.index()].cardinality = cardinality;
        }
        g
    }

    /// The graph file text that parses back to this graph.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for name in &self.vertex_names {
            out.push_str(&format!("vertex {name}\n"));
        }
        for e in &self.edges {
            out.push_str(&format!(
                "edge {} {} {}\n",
                e.name,
                self.vertex_names[e.source.index()],
                self.vertex_names[e.range.index()]
            ));
        }
        for b in &self.blocks {
            let card = if b.is_finite() { "finite" } else { "infinite" };
            let names: Vec<&str> = b.edges.iter().map(|&e| self.edge_name(e)).collect();
            out.push_str(&format!("block {} {card} {}\n", b.name, names.join(" ")));
        }
        out
    }
}

impl fmt::Display for SeparatedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Standard small graphs used throughout the test suites and the CLI.
pub mod builtin {
    use super::*;

    pub const ROSE2_TRIVIAL: &str = "vertex v\nedge e v v\nedge f v v\nblock B1 finite e f\n";
    pub const ROSE2_FREE: &str = "vertex v\nedge e v v\nedge f v v\nseparation free\n";
    pub const FIM2: &str = "vertex v\nvertex x1\nvertex x2\nedge e1 v x1\nedge f1 v x1\nedge e2 v x2\nedge f2 v x2\nseparation free\n";
    pub const ROSE1: &str = "vertex v\nedge e v v\nseparation trivial\n";

    /// One vertex, two loops, one block holding both loops.
    pub fn rose2_trivial() -> SeparatedGraph {
        parse_graph(ROSE2_TRIVIAL).expect("builtin graph")
    }

    /// One vertex, two loops, each loop in its own block.
    pub fn rose2_free() -> SeparatedGraph {
        parse_graph(ROSE2_FREE).expect("builtin graph")
    }

    /// The graph whose separated inverse semigroup contains the free inverse
    /// monoid on two generators.
    pub fn fim2() -> SeparatedGraph {
        parse_graph(FIM2).expect("builtin graph")
    }

    /// One vertex with a single loop; its semigroup is the bicyclic monoid
    /// with a zero adjoined.
    pub fn rose1() -> SeparatedGraph {
        parse_graph(ROSE1).expect("builtin graph")
    }

    /// The free-separation graph with a hub `v`, vertices `x1..xn` and edges
    /// `e_i, f_i : v -> x_i`.
    pub fn fim_graph(n: usize) -> SeparatedGraph {
        let mut text = String::from("vertex v\n");
        for i in 1..=n {
            text.push_str(&format!("vertex x{i}\n"));
        }
        for i in 1..=n {
            text.push_str(&format!("edge e{i} v x{i}\nedge f{i} v x{i}\n"));
        }
        text.push_str("separation free\n");
        parse_graph(&text).expect("builtin graph")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rose2_trivial_has_one_block() {
        let g = builtin::rose2_trivial();
        assert_eq!(g.blocks().len(), 1);
        assert_eq!(g.block(BlockId(0)).edges, vec![EdgeId(0), EdgeId(1)]);
        assert!(g.is_finitely_separated());
        assert!(g.infinite_sources().is_empty());
    }

    #[test]
    fn free_separation_gives_singletons() {
        let skel = Skeleton::new().vertex("v").edge("e", "v", "v").edge("f", "v", "v");
        let g = free_separation(&skel, GraphOptions::default()).unwrap();
        let blocks: Vec<Vec<EdgeId>> = g.blocks().iter().map(|b| b.edges.clone()).collect();
        assert_eq!(blocks, vec![vec![EdgeId(0)], vec![EdgeId(1)]]);
        let t = trivial_separation(&skel, GraphOptions::default()).unwrap();
        assert_eq!(t.blocks().len(), 1);
        assert_eq!(t.block(BlockId(0)).edges.len(), 2);
    }

    #[test]
    fn fim2_parses() {
        let g = builtin::fim2();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 4);
        assert_eq!(g.blocks_at(VertexId(0)).len(), 4);
        assert!(g.is_sink(VertexId(1)));
        assert!(g.infinite_sources().is_empty());
    }

    #[test]
    fn infinite_flags_produce_infinite_source() {
        let g = builtin::fim2();
        let at_v: Vec<BlockId> = g.blocks_at(VertexId(0)).to_vec();
        let h = g.with_cardinality(&at_v, Cardinality::Infinite);
        assert!(!h.is_finitely_separated());
        assert_eq!(h.infinite_sources(), [VertexId(0)].into_iter().collect());
        let r = builtin::rose2_free();
        let one = r.with_cardinality(&[BlockId(0)], Cardinality::Infinite);
        assert!(!one.is_finitely_separated());
        assert!(one.infinite_sources().is_empty());
    }

    #[test]
    fn isolated_vertices_need_override() {
        let text = "vertex v\nvertex w\nedge e v v\nseparation trivial\n";
        assert!(matches!(parse_graph(text), Err(GraphError::IsolatedVertex { .. })));
        let g = parse_graph_with(text, GraphOptions { allow_isolated: true }).unwrap();
        assert_eq!(g.isolated_vertices(), [VertexId(1)].into_iter().collect());
    }

    #[test]
    fn reports_validation_errors() {
        assert!(matches!(
            parse_graph("vertex v\nvertex v\n"),
            Err(GraphError::DuplicateIdentifier { line: 2, .. })
        ));
        assert!(matches!(
            parse_graph("vertex v\nedge v v v\n"),
            Err(GraphError::DuplicateIdentifier { line: 2, .. })
        ));
        assert!(matches!(
            parse_graph("vertex v\nedge e v w\nseparation free\n"),
            Err(GraphError::UnknownIdentifier { line: 2, .. })
        ));
        assert!(matches!(
            parse_graph("vertex v\nvertex w\nedge e v w\nedge f w v\nblock B finite e f\n"),
            Err(GraphError::BlockSourceMismatch { .. })
        ));
        assert!(matches!(
            parse_graph("vertex v\nedge e v v\nedge f v v\nblock B finite e\n"),
            Err(GraphError::PartitionViolation { count: 0, .. })
        ));
        assert!(matches!(
            parse_graph("vertex v\nedge e v v\nblock A finite e\nblock B finite e\n"),
            Err(GraphError::PartitionViolation { count: 2, .. })
        ));
        assert!(matches!(
            parse_graph("vertex v\nedge e v\n"),
            Err(GraphError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse_graph("vertex v\nedge e v v\nblock B finite e\nseparation free\n"),
            Err(GraphError::MixedSeparation { line: 4 })
        ));
        assert!(matches!(
            parse_graph("vertex a~b\n"),
            Err(GraphError::InvalidIdentifier { line: 1, .. })
        ));
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let g = parse_graph("# rose\n\nvertex v # hub\nedge e v v\nblock B infinite e\n").unwrap();
        assert!(!g.is_finitely_separated());
        assert_eq!(g.edge_name(EdgeId(0)), "e");
    }

    #[test]
    fn text_round_trip() {
        for g in [builtin::rose2_trivial(), builtin::rose2_free(), builtin::fim2()] {
            let h = parse_graph(&g.to_text()).unwrap();
            assert_eq!(h.to_text(), g.to_text());
        }
    }
}
