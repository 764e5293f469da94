use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use serde_json::{json, Value};
use thiserror::Error;

use sepgraph::algebra::{basis_enumerate, cover_witness, is_cover_bounded, q_of, AlgebraError, CoverVerdict};
use sepgraph::graph::{parse_graph_with, GraphError, GraphOptions};
use sepgraph::oracle::crosscheck;
use sepgraph::paths::{letters_at, parse_path, separated_paths_from};
use sepgraph::semigroup::enumerate_automorphisms;
use sepgraph::semilattice::{enumerate_lower_sets, CanonicalLowerSet, LowerSetKind, PathTree};
use sepgraph::spectrum::{
    check_tight_truncation, check_ultra_truncation, cylinder_difference, cylinder_intersect, cylinder_member,
    unverified_members, CylinderSet, FilterTruncation, SpectrumError,
};
use sepgraph::{Budget, BudgetExceeded, Element, ReducedPath, Semigroup, SeparatedGraph};

use crate::{CheckKind, Cli, Command, CylinderArgs, CylinderOp, OracleCommand, SpectrumCommand, What};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read `{path}`: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("{0}")]
    Input(String),
    #[error("budget of {} search nodes exceeded", .0.limit)]
    Budget(BudgetExceeded),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Budget(_) => 3,
            _ => 2,
        }
    }
}

impl From<BudgetExceeded> for CliError {
    fn from(b: BudgetExceeded) -> Self {
        CliError::Budget(b)
    }
}

impl From<SpectrumError> for CliError {
    fn from(e: SpectrumError) -> Self {
        match e {
            SpectrumError::Budget(b) => CliError::Budget(b),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::Budget(b) => CliError::Budget(b),
            other => CliError::Input(other.to_string()),
        }
    }
}

fn input<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Input(e.to_string())
}

/// Text to print and the process exit code.
pub struct Output {
    pub text: String,
    pub code: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }

    fn json(value: Value, code: u8) -> Self {
        Output { text: format!("{}\n", serde_json::to_string_pretty(&value).expect("json")), code }
    }
}

fn load(path: &Path, cli: &Cli) -> Result<SeparatedGraph, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
    Ok(parse_graph_with(&text, GraphOptions { allow_isolated: cli.allow_isolated })?)
}

/// Parses `"p1, p2, …"`, optionally wrapped in braces.
fn parse_paths(graph: &SeparatedGraph, text: &str) -> Result<Vec<ReducedPath>, CliError> {
    let inner = text.trim().trim_start_matches('{').trim_end_matches('}');
    inner
        .split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| parse_path(graph, p).map_err(input))
        .collect()
}

fn parse_lower(graph: &SeparatedGraph, text: &str) -> Result<CanonicalLowerSet, CliError> {
    let paths = parse_paths(graph, text)?;
    let tree = PathTree::closure_of(graph, paths.iter()).map_err(input)?;
    CanonicalLowerSet::try_from_tree(graph, tree).map_err(input)
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let mut budget = Budget::new(cli.budget);
    match &cli.command {
        Command::Validate { graph } => validate(&load(graph, cli)?, cli.json),
        Command::Nf { graph, word, level, grading } => {
            let g = load(graph, cli)?;
            let s = Semigroup::new(&g, (*level).into());
            let a = s.parse_word(word).map_err(input)?;
            let nf = s.render(&a);
            let grade = s.grading(&a).map(|w| w.display(&g).to_string());
            if cli.json {
                return Ok(Output::json(json!({ "normal_form": nf, "grading": grade }), 0));
            }
            let mut out = format!("{nf}\n");
            if *grading {
                writeln!(out, "grading: {}", grade.as_deref().unwrap_or("none")).unwrap();
            }
            Ok(Output::ok(out))
        }
        Command::Eq { graph, a, b, level } => {
            let g = load(graph, cli)?;
            let s = Semigroup::new(&g, (*level).into());
            let x = s.parse_word(a).map_err(input)?;
            let y = s.parse_word(b).map_err(input)?;
            let (nx, ny) = (s.render(&x), s.render(&y));
            let verdict = if x == y { "EQUAL" } else { "UNEQUAL" };
            if cli.json {
                return Ok(Output::json(json!({ "verdict": verdict, "a": nx, "b": ny }), 0));
            }
            Ok(Output::ok(format!("{verdict}\na: {nx}\nb: {ny}\n")))
        }
        Command::Mul { graph, a, b, level } => {
            let g = load(graph, cli)?;
            let s = Semigroup::new(&g, (*level).into());
            let x = s.parse_word(a).map_err(input)?;
            let y = s.parse_word(b).map_err(input)?;
            let nf = s.render(&s.mul(&x, &y));
            if cli.json {
                return Ok(Output::json(json!({ "product": nf }), 0));
            }
            Ok(Output::ok(format!("{nf}\n")))
        }
        Command::Enumerate { graph, max_len, what } => enumerate(&load(graph, cli)?, *max_len, *what, &mut budget, cli.json),
        Command::Spectrum(args) => match &args.cylinder {
            Some(SpectrumCommand::Cylinder(c)) => cylinder(&load(&c.graph, cli)?, c, &mut budget, cli.json),
            None => {
                let graph = args.graph.as_ref().ok_or_else(|| input("missing graph file"))?;
                let kind = args.check.ok_or_else(|| input("missing --check ultra|tight"))?;
                let set = args.set.as_ref().ok_or_else(|| input("missing --set"))?;
                spectrum_check(&load(graph, cli)?, kind, set, args.depth, cli.json)
            }
        },
        Command::Cover { graph, vertex, block, max_len } => {
            cover(&load(graph, cli)?, vertex, block, *max_len, &mut budget, cli.json)
        }
        Command::Aut { graph } => {
            let g = load(graph, cli)?;
            let auts = enumerate_automorphisms(&g, &mut budget)?;
            let lines: Vec<String> = auts.iter().map(|a| a.display(&g).to_string()).collect();
            if cli.json {
                return Ok(Output::json(json!({ "count": auts.len(), "automorphisms": lines }), 0));
            }
            let mut out = String::new();
            for l in &lines {
                writeln!(out, "{l}").unwrap();
            }
            writeln!(out, "count: {}", auts.len()).unwrap();
            Ok(Output::ok(out))
        }
        Command::Oracle { command: OracleCommand::Crosscheck { graph, samples, len, seed, parallel } } => {
            let g = load(graph, cli)?;
            let report = crosscheck(&g, *samples, *len, *seed, (*parallel).max(1));
            let code = if report.is_clean() { 0 } else { 1 };
            Ok(Output::json(serde_json::to_value(&report).expect("report serialises"), code))
        }
    }
}

fn validate(g: &SeparatedGraph, as_json: bool) -> Result<Output, CliError> {
    let names = |vs: BTreeSet<_>| -> Vec<String> { vs.into_iter().map(|v| g.vertex_name(v).to_string()).collect() };
    let sinks: Vec<String> = g.vertices().filter(|&v| g.is_sink(v)).map(|v| g.vertex_name(v).to_string()).collect();
    let infinite_sources = names(g.infinite_sources());
    let isolated = names(g.isolated_vertices());
    let blocks: Vec<Value> = g
        .blocks()
        .iter()
        .map(|b| {
            json!({
                "name": b.name,
                "source": g.vertex_name(b.source),
                "cardinality": if b.is_finite() { "finite" } else { "infinite" },
                "edges": b.edges.iter().map(|&e| g.edge_name(e)).collect::<Vec<_>>(),
            })
        })
        .collect();
    if as_json {
        return Ok(Output::json(
            json!({
                "valid": true,
                "vertices": g.vertex_count(),
                "edges": g.edge_count(),
                "blocks": blocks,
                "finitely_separated": g.is_finitely_separated(),
                "sinks": sinks,
                "infinite_sources": infinite_sources,
                "isolated": isolated,
            }),
            0,
        ));
    }
    let mut out = String::from("OK\n");
    writeln!(out, "vertices: {}", g.vertex_count()).unwrap();
    writeln!(out, "edges: {}", g.edge_count()).unwrap();
    for b in g.blocks() {
        let edges: Vec<&str> = b.edges.iter().map(|&e| g.edge_name(e)).collect();
        let card = if b.is_finite() { "finite" } else { "infinite" };
        writeln!(out, "block {} at {} {card}: {}", b.name, g.vertex_name(b.source), edges.join(" ")).unwrap();
    }
    writeln!(out, "finitely separated: {}", g.is_finitely_separated()).unwrap();
    writeln!(out, "sinks: {}", sinks.join(" ")).unwrap();
    writeln!(out, "infinite sources: {}", infinite_sources.join(" ")).unwrap();
    writeln!(out, "isolated: {}", isolated.join(" ")).unwrap();
    Ok(Output::ok(out))
}

fn reduced_paths_from(g: &SeparatedGraph, v: sepgraph::graph::VertexId, max_len: usize) -> Vec<ReducedPath> {
    let mut out = vec![ReducedPath::vertex(v)];
    let mut layer = out.clone();
    for _ in 0..max_len {
        let next: Vec<ReducedPath> = layer
            .iter()
            .flat_map(|p| letters_at(g, p.range()).into_iter().filter_map(|x| p.extend(g, x)))
            .collect();
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn enumerate(g: &SeparatedGraph, max_len: usize, what: What, budget: &mut Budget, as_json: bool) -> Result<Output, CliError> {
    let items: Vec<String> = match what {
        What::Basis => {
            let s = Semigroup::separated(g);
            basis_enumerate(&s, max_len, budget)?.iter().map(|a| s.render(a)).collect()
        }
        What::Idempotents => {
            let s = Semigroup::separated(g);
            let mut out: Vec<Element> = Vec::new();
            for v in g.vertices() {
                enumerate_lower_sets(g, v, max_len, LowerSetKind::Canonical, budget, &mut |t| {
                    let t = CanonicalLowerSet::try_from_tree(g, t.into_tree()).expect("canonical enumeration");
                    out.push(s.idempotent(&t));
                })?;
            }
            out.sort();
            out.iter().map(|a| s.render(a)).collect()
        }
        What::NcPaths | What::Paths => {
            let mut out = Vec::new();
            for v in g.vertices() {
                let paths = match what {
                    What::NcPaths => separated_paths_from(g, v, max_len),
                    _ => reduced_paths_from(g, v, max_len),
                };
                for p in paths {
                    budget.tick()?;
                    out.push(p);
                }
            }
            out.sort();
            out.iter().map(|p| p.display(g).to_string()).collect()
        }
    };
    if as_json {
        return Ok(Output::json(json!({ "count": items.len(), "items": items }), 0));
    }
    let mut out = String::new();
    for i in &items {
        writeln!(out, "{i}").unwrap();
    }
    writeln!(out, "count: {}", items.len()).unwrap();
    Ok(Output::ok(out))
}

fn truncation(g: &SeparatedGraph, set: &str, depth: usize) -> Result<FilterTruncation, CliError> {
    let paths = parse_paths(g, set)?;
    let base = paths.first().ok_or_else(|| input("empty path set"))?.source();
    Ok(FilterTruncation::closure_of(g, base, &paths, depth)?)
}

fn spectrum_check(g: &SeparatedGraph, kind: CheckKind, set: &str, depth: usize, as_json: bool) -> Result<Output, CliError> {
    let z = truncation(g, set, depth)?;
    let cert = match kind {
        CheckKind::Ultra => check_ultra_truncation(g, &z)?,
        CheckKind::Tight => check_tight_truncation(g, &z)?,
    };
    let unverified: Vec<String> = unverified_members(g, &z).iter().map(|p| p.display(g).to_string()).collect();
    let shown = cert.display(g).to_string();
    if as_json {
        return Ok(Output::json(json!({ "certificate": shown, "pass": cert.is_pass(), "unverified": unverified }), 0));
    }
    let mut out = format!("{shown}\n");
    if !unverified.is_empty() {
        writeln!(out, "unverified: {}", unverified.join(", ")).unwrap();
    }
    Ok(Output::ok(out))
}

fn parse_cylinder(g: &SeparatedGraph, i: &str, f: &str) -> Result<CylinderSet, CliError> {
    let lower = parse_lower(g, i)?;
    let excluded: BTreeSet<ReducedPath> = parse_paths(g, f)?.into_iter().collect();
    Ok(CylinderSet::new(g, lower, excluded)?)
}

fn cylinder(g: &SeparatedGraph, c: &CylinderArgs, budget: &mut Budget, as_json: bool) -> Result<Output, CliError> {
    let b1 = parse_cylinder(g, &c.i1, &c.f1)?;
    let second = || -> Result<CylinderSet, CliError> {
        let i2 = c.i2.as_ref().ok_or_else(|| input("missing --i2"))?;
        parse_cylinder(g, i2, &c.f2)
    };
    let render = |cs: &[CylinderSet]| -> Vec<String> { cs.iter().map(|b| b.display(g).to_string()).collect() };
    let (value, text) = match c.op {
        CylinderOp::Member => {
            let set = c.set.as_ref().ok_or_else(|| input("missing --set"))?;
            let z = truncation(g, set, c.depth)?;
            let m = cylinder_member(&z, &b1)?;
            (json!({ "member": m }), format!("{m}\n"))
        }
        CylinderOp::Intersect => {
            let cut = cylinder_intersect(g, &b1, &second()?);
            let shown = cut.as_ref().map_or_else(|| "EMPTY".to_string(), |b| b.display(g).to_string());
            (json!({ "intersection": cut.map(|b| b.display(g).to_string()) }), format!("{shown}\n"))
        }
        CylinderOp::Diff => {
            let parts = render(&cylinder_difference(g, &b1, &second()?, budget)?);
            let text = if parts.is_empty() { "EMPTY\n".to_string() } else { parts.iter().map(|p| format!("{p}\n")).collect() };
            (json!({ "difference": parts }), text)
        }
    };
    Ok(if as_json { Output::json(value, 0) } else { Output::ok(text) })
}

fn cover(g: &SeparatedGraph, vertex: &str, block: &str, max_len: usize, budget: &mut Budget, as_json: bool) -> Result<Output, CliError> {
    let v = g.vertex_by_name(vertex).ok_or_else(|| input(format!("unknown vertex `{vertex}`")))?;
    let x = g.block_by_name(block).ok_or_else(|| input(format!("unknown block `{block}`")))?;
    let s = Semigroup::separated(g);
    let q = q_of(&s, x)?;
    if g.block(x).source != v {
        return Err(input(format!("block `{block}` does not start at `{vertex}`")));
    }
    let root = CanonicalLowerSet::root(v);
    let zs: Vec<CanonicalLowerSet> = g
        .block(x)
        .edges
        .iter()
        .map(|&e| {
            let p = ReducedPath::vertex(v).extend(g, sepgraph::Letter::positive(e)).expect("edge leaves v");
            CanonicalLowerSet::try_from_tree(g, root.with_path(g, &p)).expect("single edge")
        })
        .collect();
    let verdict = is_cover_bounded(g, &root, &zs, max_len, budget)?;

    let mut checked = 0u64;
    let mut failures = Vec::new();
    let mut sets = Vec::new();
    enumerate_lower_sets(g, v, max_len, LowerSetKind::Canonical, budget, &mut |j| sets.push(j))?;
    for j in sets {
        let j = CanonicalLowerSet::try_from_tree(g, j.into_tree()).expect("canonical enumeration");
        checked += 1;
        if cover_witness(g, &j, x).is_err() {
            failures.push(j.display(g).to_string());
        }
    }
    let code = if verdict.is_cover() && failures.is_empty() { 0 } else { 1 };
    let shown = verdict.display(g).to_string();
    let qx = q.render(&s);
    if as_json {
        let counterexample = match &verdict {
            CoverVerdict::Counterexample(j) => Some(j.display(g).to_string()),
            CoverVerdict::NoCounterexample { .. } => None,
        };
        return Ok(Output::json(
            json!({
                "verdict": shown,
                "counterexample": counterexample,
                "witnesses_checked": checked,
                "witness_failures": failures,
                "q_X": qx,
            }),
            code,
        ));
    }
    let mut out = format!("{shown}\n");
    writeln!(out, "witnesses: {}/{checked} validated", checked - failures.len() as u64).unwrap();
    for f in &failures {
        writeln!(out, "witness failed for J = {f}").unwrap();
    }
    writeln!(out, "q_X = {qx}").unwrap();
    Ok(Output { text: out, code })
}
