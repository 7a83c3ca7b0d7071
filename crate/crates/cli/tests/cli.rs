use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use treecut::{brute_min_multicut, gen_random, parse_instance, serialize_instance, OracleConfig, Shape};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_treecut"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("treecut-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn write(name: &str, text: &str) -> PathBuf {
    let p = scratch(name);
    fs::write(&p, text).unwrap();
    p
}

fn treecut(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

const PATH3: &str = "wmctree 1 3 1\ne 0 1\ne 1 2\nw 0 5\nw 1 1\nw 2 5\np 0 2\n";

#[test]
fn oracle_on_three_vertex_path() {
    let f = write("path3.txt", PATH3);
    let out = treecut(&["solve", f.to_str().unwrap(), "--algo", "oracle"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["min_weight"], 1);
    assert_eq!(r["witness"], serde_json::json!([1]));
    assert_eq!(r["answer"], "yes");
}

#[test]
fn k_with_zero_budgets_says_no() {
    let f = write("path3-k.txt", PATH3);
    let out = treecut(&["solve", f.to_str().unwrap(), "--algo", "k", "--k", "0", "--w", "0"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["answer"], "no");
}

#[test]
fn missing_budget_names_the_flag() {
    let f = write("path3-missing.txt", PATH3);
    let out = treecut(&["solve", f.to_str().unwrap(), "--algo", "k", "--w", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--k"));
    let out = treecut(&["solve", f.to_str().unwrap(), "--algo", "light", "--w", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--d"));
}

#[test]
fn malformed_file_exits_2() {
    let f = write("bad.txt", "wmctree 1 3 1\ne 0 1\n");
    let out = treecut(&["solve", f.to_str().unwrap(), "--algo", "oracle"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn solvers_agree_with_library_oracle() {
    for seed in 0..12 {
        let inst = gen_random(13, 5, 30, seed, Shape::Uniform).unwrap();
        let want = brute_min_multicut(&inst.tree, &inst.pairs, &inst.weights, None, &OracleConfig::default())
            .unwrap()
            .map(|s| s.total_weight());
        let f = write(&format!("agree-{seed}.txt"), &serialize_instance(&inst));
        for algo in ["leaves", "oracle"] {
            let out = treecut(&["solve", f.to_str().unwrap(), "--algo", algo]);
            let r = json(&out);
            match want {
                Some(w) => assert_eq!(r["min_weight"], w, "{algo} seed {seed}"),
                None => assert_eq!(r["answer"], "infeasible", "{algo} seed {seed}"),
            }
        }
        if let Some(w) = want {
            let s = w.to_string();
            let out = treecut(&["solve", f.to_str().unwrap(), "--algo", "light", "--d", "20", "--w", &s]);
            assert_eq!(json(&out)["min_weight"], w, "light seed {seed}");
        }
    }
}

#[test]
fn trace_is_dot() {
    let f = write("trace-in.txt", &serialize_instance(&gen_random(20, 6, 9, 4, Shape::Leaves(4)).unwrap()));
    let dot = scratch("trace.dot");
    let out = treecut(&["solve", f.to_str().unwrap(), "--algo", "leaves", "--trace", dot.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(fs::read_to_string(&dot).unwrap().starts_with("digraph"));
}

#[test]
fn verify_outcomes() {
    let f = write("verify.txt", PATH3);
    let p = f.to_str().unwrap();
    assert_eq!(treecut(&["verify", p, "--witness", "1"]).status.code(), Some(0));
    let out = treecut(&["verify", p, "--witness", "0,2"]);
    assert_eq!(out.status.code(), Some(0));
    let out = treecut(&["verify", p, "--witness", "0", "--w", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("weight exceeded"));
    let out = treecut(&["verify", p, "--witness", ""]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("(0, 2)"));
    assert_eq!(treecut(&["verify", p, "--witness", "7"]).status.code(), Some(2));
}

#[test]
fn gen_is_deterministic_and_parses() {
    let args = ["gen", "--n", "40", "--pairs", "9", "--seed", "17", "--shape", "caterpillar", "--budget-w", "50"];
    let a = treecut(&args);
    let b = treecut(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let inst = parse_instance(&String::from_utf8(a.stdout).unwrap()).unwrap();
    assert_eq!((inst.n(), inst.pairs.len(), inst.budget_w), (40, 9, Some(50)));
    let c = treecut(&["gen", "--n", "40", "--pairs", "9", "--seed", "18", "--shape", "caterpillar"]);
    assert_ne!(c.stdout, b.stdout);
}

#[test]
fn reduce_vc_then_classify_and_solve() {
    let g = write("c5.graph", "5 5\n0 1\n1 2\n2 3\n3 4\n4 0\n");
    let inst = scratch("c5.txt");
    let out = treecut(&["reduce-vc", g.to_str().unwrap(), "-o", inst.to_str().unwrap()]);
    assert!(out.status.success());
    let p = inst.to_str().unwrap();
    let c = json(&treecut(&["classify", p, "--d", "3", "--q", "6"]));
    assert_eq!(c["light"].as_array().unwrap().len(), 10);
    assert_eq!(c["dq_light"], true);
    let r = json(&treecut(&["solve", p, "--algo", "light", "--d", "3", "--w", "3"]));
    assert_eq!((r["answer"].as_str(), r["min_weight"].as_u64()), (Some("yes"), Some(3)));
}

#[test]
fn bench_rows_are_within_bound() {
    let csv = scratch("bench.csv");
    let out = treecut(&["bench", "--seed", "2", "--sequential", "-o", csv.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let mut reader = csv::Reader::from_path(&csv).unwrap();
    let headers = reader.headers().unwrap().clone();
    assert_eq!(
        headers.iter().collect::<Vec<_>>(),
        ["instance", "algo", "answer", "weight", "nodes", "bound", "within_bound", "ms"]
    );
    let rows: Vec<_> = reader.records().map(|r| r.unwrap()).collect();
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| &r[6] == "true"));
}
