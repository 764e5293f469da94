use std::process::{Command, Output};

fn graph(name: &str) -> String {
    format!("{}/../../graphs/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sepgraph")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn golden_normal_form_with_grading() {
    let g = graph("rose2f.sg");
    let out = run(&["nf", &g, "-w", "e e ~e f ~f e f f ~f e ~e ~f ~f", "--grading"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "(e f)(e e f f)(e e f e) | e e ~f\ngrading: e e ~f\n");
}

#[test]
fn commuting_projections_are_equal() {
    let g = graph("rose2f.sg");
    let out = run(&["eq", &g, "-a", "e ~e f ~f", "-b", "f ~f e ~e"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("EQUAL\n"));
}

#[test]
fn orthogonal_letters_give_zero() {
    let out = run(&["nf", &graph("rose2t.sg"), "-w", "~e f"]);
    assert_eq!(stdout(&out), "0\n");
}

#[test]
fn levels_change_the_answer() {
    let g = graph("rose2t.sg");
    let free = run(&["nf", &g, "-w", "~e f", "--level", "free"]);
    assert_ne!(stdout(&free), "0\n");
}

#[test]
fn product_of_words() {
    let out = run(&["mul", &graph("rose2t.sg"), "-a", "e", "-b", "~e"]);
    assert_eq!(stdout(&out), "(e) | v\n");
}

#[test]
fn output_is_deterministic() {
    let g = graph("fim2.sg");
    let a = run(&["enumerate", &g, "--max-len", "1", "--what", "basis"]);
    let b = run(&["enumerate", &g, "--max-len", "1", "--what", "basis"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn basis_at_length_zero_lists_vertices() {
    let out = run(&["enumerate", &graph("fim2.sg"), "--max-len", "0"]);
    assert_eq!(stdout(&out).lines().last(), Some("count: 3"));
}

#[test]
fn automorphism_counts() {
    assert_eq!(stdout(&run(&["aut", &graph("rose2t.sg")])).lines().last(), Some("count: 2"));
    assert_eq!(stdout(&run(&["aut", &graph("fim2.sg")])).lines().last(), Some("count: 8"));
}

#[test]
fn validate_reports_infinite_sources() {
    let out = run(&["validate", &graph("infsource.sg")]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("infinite sources: u\n"));
}

#[test]
fn tight_but_not_ultra_at_an_infinite_source() {
    let g = graph("infsource.sg");
    let tight = run(&["spectrum", &g, "--check", "tight", "--set", "u", "--depth", "3"]);
    assert_eq!(stdout(&tight), "PASS depth=3\n");
    let ultra = run(&["spectrum", &g, "--check", "ultra", "--set", "u", "--depth", "3"]);
    assert_eq!(stdout(&ultra), "FAIL witness=u\n");
}

#[test]
fn cylinder_operations() {
    let f = graph("rose2f.sg");
    let t = graph("rose2t.sg");
    let diff = run(&["spectrum", "cylinder", &f, "--op", "diff", "--i1", "v", "--i2", "e"]);
    assert_eq!(stdout(&diff), "Z({v} \\ {e})\n");
    let cut = run(&["spectrum", "cylinder", &t, "--op", "intersect", "--i1", "e", "--i2", "f"]);
    assert_eq!(stdout(&cut), "EMPTY\n");
    let member = run(&["spectrum", "cylinder", &f, "--op", "member", "--i1", "v", "--f1", "e", "--set", "f", "--depth", "3"]);
    assert_eq!(stdout(&member), "true\n");
}

#[test]
fn cover_of_a_finite_block() {
    let out = run(&["cover", &graph("rose2t.sg"), "--vertex", "v", "--block", "B1", "--max-len", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("no counterexample up to maxLen 3\n"));
    assert!(text.contains("q_X = 1·[(v) | v] - 1·[(e) | v] - 1·[(f) | v]"));
}

#[test]
fn cover_rejects_infinite_blocks() {
    let out = run(&["cover", &graph("infsource.sg"), "--vertex", "u", "--block", "A"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn crosscheck_emits_a_clean_report() {
    let out = run(&["oracle", "crosscheck", &graph("rose2f.sg"), "--samples", "300", "--len", "8", "--parallel", "2"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["samples"], 300);
    assert_eq!(v["disagreements"], 0);
    assert_eq!(v["agreements"], 300);
}

#[test]
fn json_output() {
    let out = run(&["--json", "nf", &graph("rose2t.sg"), "-w", "e ~e"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["normal_form"], "(e) | v");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["nf", "no-such-file.sg", "-w", "e"]).status.code(), Some(2));
    assert_eq!(run(&["nf", &graph("rose2t.sg"), "-w", "zz"]).status.code(), Some(2));
    let tight = run(&["--budget", "10", "enumerate", &graph("rose2f.sg"), "--max-len", "3"]);
    assert_eq!(tight.status.code(), Some(3));
}

#[test]
fn isolated_vertices_need_the_override() {
    let dir = std::env::temp_dir().join(format!("sepgraph-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("iso.sg");
    std::fs::write(&path, "vertex v\nvertex z\nedge e v v\nseparation trivial\n").unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(run(&["validate", p]).status.code(), Some(2));
    let ok = run(&["validate", p, "--allow-isolated"]);
    assert!(ok.status.success());
    assert!(stdout(&ok).contains("isolated: z\n"));
}
