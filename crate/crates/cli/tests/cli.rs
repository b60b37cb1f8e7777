use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

const PRISM: &str = "6 9\n0 1\n1 2\n2 0\n0 3\n1 4\n2 5\n3 4\n4 5\n5 3\n";

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_p3pack"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json_lines(o: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&o.stdout).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("p3pack-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    dir
}

#[test]
fn oracle_modes_on_the_prism() {
    let o = run(&["--in", "edgelist", "oracle", "--mode", "lambda"], PRISM);
    assert!(o.status.success());
    let v = &json_lines(&o)[0];
    assert_eq!(v["value"], 2);
    assert_eq!(v["witness"]["paths"].as_array().unwrap().len(), 2);

    let o = run(&["--in", "edgelist", "oracle", "--mode", "factor"], PRISM);
    assert_eq!(json_lines(&o)[0]["value"], true);
    let o = run(&["--in", "edgelist", "oracle", "--mode", "domination"], PRISM);
    assert_eq!(json_lines(&o)[0]["value"], 2);
    let o = run(&["--in", "edgelist", "oracle", "--mode", "matching"], PRISM);
    assert_eq!(json_lines(&o)[0]["value"], 1);
}

#[test]
fn pack_every_algorithm() {
    for alg in ["auto", "2conn", "chain", "reduce"] {
        let o = run(&["--in", "edgelist", "pack", "--algorithm", alg], PRISM);
        assert!(o.status.success(), "{alg}: {}", String::from_utf8_lossy(&o.stderr));
        let v = &json_lines(&o)[0];
        assert_eq!(v["size"], 2, "{alg}");
        assert!(v["checks_passed"].is_array());
    }
}

#[test]
fn pack_reads_graph6_streams() {
    // the prism and K4
    let o = run(&["pack"], "E{Sw\nC~\n");
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let sizes: Vec<Value> = json_lines(&o).iter().map(|v| v["size"].clone()).collect();
    assert_eq!(sizes, [2, 1]);
}

#[test]
fn generate_writes_graph6_and_manifest() {
    let dir = scratch("gen");
    let o = run(
        &["--seed", "3", "generate", "--family", "clawfreeRandom", "--params", r#"{"n":9,"connectivity":2}"#, "--count", "4", "--out", dir.to_str().unwrap()],
        "",
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let manifest: Value = serde_json::from_str(&std::fs::read_to_string(dir.join("manifest.json")).unwrap()).unwrap();
    let inst = manifest["instances"].as_array().unwrap();
    assert_eq!(inst.len(), 4);
    for (i, e) in inst.iter().enumerate() {
        assert_eq!(e["recipe"]["seed"], 3 + i as u64);
        let g6 = std::fs::read_to_string(dir.join(e["file"].as_str().unwrap())).unwrap();
        assert_eq!(g6.trim(), e["graph6"].as_str().unwrap());
    }
    let again = scratch("gen2");
    run(
        &["--seed", "3", "generate", "--family", "clawfreeRandom", "--params", r#"{"n":9,"connectivity":2}"#, "--count", "4", "--out", again.to_str().unwrap()],
        "",
    );
    assert_eq!(std::fs::read(dir.join("manifest.json")).unwrap(), std::fs::read(again.join("manifest.json")).unwrap());
    let _ = std::fs::remove_dir_all(dir);
    let _ = std::fs::remove_dir_all(again);
}

#[test]
fn generate_distinguished_items_for_constructions() {
    let dir = scratch("r");
    let o = run(&["generate", "--family", "constructionR", "--params", r#"{"na":4,"nb":4}"#, "--out", dir.to_str().unwrap()], "");
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let manifest: Value = serde_json::from_str(&std::fs::read_to_string(dir.join("manifest.json")).unwrap()).unwrap();
    assert!(!manifest["instances"][0]["distinguished_vertices"].as_array().unwrap().is_empty());
    let _ = std::fs::remove_dir_all(dir);
}

#[test]
fn counterexample_candidate_exits_two() {
    let o = run(&["--in", "edgelist", "theorem", "--name", "delta-path-triangle"], PRISM);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(json_lines(&o)[0]["status"], "counterexample-candidate");
}

#[test]
fn confirmed_theorem_exits_zero() {
    let o = run(&["--in", "edgelist", "theorem", "--name", "avoid-e", "--edge", "0-3"], PRISM);
    assert_eq!(o.status.code(), Some(0));
    let v = &json_lines(&o)[0];
    assert_eq!(v["status"], "confirmed");
    assert_eq!(v["witness"]["checked"], 1);
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&["bogus"], "").status.code(), Some(1));
    let o = run(&["--in", "edgelist", "theorem", "--name", "no-such"], PRISM);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("2conclfr"));
    assert_eq!(run(&["oracle", "--mode", "lambda"], "not graph6 !!\n").status.code(), Some(1));
    assert_eq!(run(&["--in", "edgelist", "pack", "--algorithm", "2conn"], "3 2\n0 1\n1 2\n").status.code(), Some(1));
    assert_eq!(run(&["--help"], "").status.code(), Some(0));
}

#[test]
fn oracle_cap_is_honoured() {
    let o = run(&["--cap", "4", "--in", "edgelist", "oracle", "--mode", "lambda"], PRISM);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cap"));
}

#[test]
fn decompose_prints_block_tree() {
    // two triangles sharing vertex 2
    let o = run(&["--in", "edgelist", "decompose"], "5 6\n0 1\n1 2\n2 0\n2 3\n3 4\n4 2\n");
    let v = &json_lines(&o)[0];
    assert_eq!(v["eb"], 2);
    assert_eq!(v["decomposition"]["blocks"].as_array().unwrap().len(), 2);
}

#[test]
fn linegraph_ops() {
    let o = run(&["--in", "edgelist", "linegraph", "--op", "lambda_e"], PRISM);
    let v = &json_lines(&o)[0];
    assert_eq!(v["value"], 4);
    assert!(v["parts"].as_array().unwrap().iter().all(|p| p.as_array().unwrap().len() == 2));
    let o = run(&["--in", "edgelist", "linegraph", "--op", "lg"], PRISM);
    assert_eq!(json_lines(&o)[0]["edge_of"].as_array().unwrap().len(), 9);
    let o = run(&["--in", "edgelist", "linegraph", "--op", "edge3factor"], PRISM);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(json_lines(&o)[0]["parts"].as_array().unwrap().len(), 3);
}

#[test]
fn domination_checks() {
    let o = run(&["--in", "edgelist", "domination", "--check", "bounds"], PRISM);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_lines(&o)[0]["status"], "confirmed");
    let o = run(&["--in", "edgelist", "domination", "--check", "ham"], PRISM);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn campaign_is_deterministic_across_jobs() {
    let source = r#"{"kind":"generated","recipes":[{"family":"clawfreeRandom","n":10,"connectivity":2}],"count":6}"#;
    let strip = |o: &Output| {
        json_lines(o)
            .into_iter()
            .map(|mut v| {
                v.as_object_mut().unwrap().remove("elapsed_us");
                v
            })
            .collect::<Vec<_>>()
    };
    let a = run(&["--seed", "9", "--jobs", "1", "campaign", "--theorems", "2conclfr,avoid-e", "--source", source], "");
    let b = run(&["--seed", "9", "--jobs", "3", "campaign", "--theorems", "2conclfr,avoid-e", "--source", source], "");
    assert!(a.status.success());
    assert_eq!(strip(&a).len(), 12);
    assert_eq!(strip(&a), strip(&b));
    let summary = String::from_utf8_lossy(&a.stderr);
    assert!(summary.starts_with("12 reports"), "{summary}");
    assert!(summary.contains(" 0 counterexample candidates, 0 algorithm bug candidates, 0 errors"), "{summary}");
}

#[test]
fn campaign_over_graph6_file_flags_counterexamples() {
    let dir = scratch("camp");
    std::fs::create_dir_all(&dir).unwrap();
    let input = dir.join("in.g6");
    // the prism
    std::fs::write(&input, "E{Sw\n").unwrap();
    let out = dir.join("out.jsonl");
    let o = run(
        &["campaign", "--theorems", "delta-path-triangle", "--input", input.to_str().unwrap(), "--out", out.to_str().unwrap()],
        "",
    );
    assert_eq!(o.status.code(), Some(2));
    let text = std::fs::read_to_string(&out).unwrap();
    let v: Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
    assert_eq!(v["instance"], "E{Sw");
    let _ = std::fs::remove_dir_all(dir);
}

#[test]
fn text_format() {
    let o = run(&["--format", "text", "--in", "edgelist", "oracle", "--mode", "lambda"], PRISM);
    let s = String::from_utf8_lossy(&o.stdout);
    assert!(s.starts_with("2: "));
    let o = run(&["--format", "text", "theorem", "--list"], "");
    assert!(String::from_utf8_lossy(&o.stdout).contains("Pr3con (open)"));
}
