use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn unicore(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_unicore"))
        .args(args)
        .env_remove("UNICORE_ORACLE_LIMIT")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid json")
}

#[test]
fn analyze_fig1() {
    let out = unicore(&["analyze", "--fixture", "fig1_G", "--json"], None);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["n"], 7);
    assert_eq!(v["alpha"], 4);
    assert_eq!(v["mu"], 3);
    assert_eq!(v["koenig_egervary"], true);
    assert_eq!(v["core"], serde_json::json!(["a", "b", "c"]));
}

#[test]
fn analyze_fig2() {
    let v = json(&unicore(&["analyze", "--fixture", "fig2_G", "--json"], None));
    assert_eq!(v["alpha"], 5);
    assert_eq!(v["mu"], 4);
    assert_eq!(v["koenig_egervary"], false);
    assert_eq!(v["core"], serde_json::json!(["a", "b"]));
    assert_eq!(v["method"], "StructuralDecomposition");
    assert_eq!(v["certificate"], serde_json::json!({"x": ["a", "b"]}));
}

#[test]
fn json_keys_are_sorted_and_nulls_present() {
    let out = unicore(&["analyze", "-", "--json"], Some("p q\n"));
    let text = stdout(&out);
    let keys: Vec<&str> = text
        .lines()
        .filter(|l| l.starts_with("  \""))
        .map(|l| l.trim().split('"').nth(1).unwrap())
        .collect();
    let mut sorted = keys.clone();
    sorted.sort_unstable();
    assert_eq!(keys, sorted);
    assert_eq!(keys.len(), 12);
    let v = json(&out);
    assert!(v["cycle"].is_null() && v["n1"].is_null() && v["certificate"].is_null());
}

#[test]
fn method_both_on_file() {
    let dir = std::env::temp_dir().join(format!("unicore-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("u50.txt");
    let gen = unicore(&["gen", "--kind", "unicyclic", "--n", "50", "--seed", "5", "--out", path.to_str().unwrap()], None);
    assert!(gen.status.success());
    let out = unicore(&["analyze", path.to_str().unwrap(), "--method", "both", "--json"], None);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json(&out)["class"], "Unicyclic");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn gen_small_instances() {
    let tri = stdout(&unicore(&["gen", "--kind", "unicyclic", "--n", "3", "--seed", "0"], None));
    let edges: Vec<&str> = tri.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(edges, ["v0 v1", "v0 v2", "v1 v2"]);
    assert!(tri.contains("# generator: unicore-gen/1"));

    let single = stdout(&unicore(&["gen", "--kind", "tree", "--n", "1", "--seed", "0"], None));
    let body: Vec<&str> = single.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(body, ["v0"]);
}

#[test]
fn critical_command() {
    let out = unicore(&["critical", "--fixture", "fig2_G"], None);
    let text = stdout(&out);
    assert!(out.status.success());
    assert!(text.contains("critical: 5/5\n"));
    assert!(text.contains("equivalence: holds\n"));

    let c4 = unicore(&["critical", "-", "--json"], Some("a b\nb c\nc d\nd a\n"));
    let v = json(&c4);
    assert_eq!(v["critical_count"], 0);
    assert_eq!(v["koenig_egervary"], true);
    assert_eq!(v["equivalence_holds"], true);

    let paw = json(&unicore(&["critical", "-", "--json"], Some("a b\nb c\nc a\nc d\n")));
    assert_eq!(paw["cycle_length"], 3);
    assert_eq!(paw["critical_count"], 1);
    assert_eq!(paw["equivalence_holds"], true);
}

#[test]
fn exit_codes() {
    let code = |args: &[&str], input: Option<&str>| unicore(args, input).status.code();
    assert_eq!(code(&["analyze", "-"], Some("a b c\n")), Some(1));
    assert_eq!(code(&["analyze", "-"], Some("a b\nb c\nc a\nc d\nd a\n")), Some(2));
    assert_eq!(code(&["critical", "-"], Some("a b\nb c\n")), Some(2));
    assert_eq!(code(&["verify", "--count", "1", "--max-n", "2", "--kind", "unicyclic"], None), Some(1));
    assert_eq!(code(&["verify", "--count", "1", "--max-n", "3", "--kind", "unicyclic"], None), Some(0));
}

#[test]
fn forced_triangle_campaign() {
    let out = unicore(&["verify", "--count", "1", "--max-n", "3", "--kind", "unicyclic", "--list"], None);
    let text = stdout(&out);
    assert!(text.contains("n=3 m=3"), "{text}");
    assert!(text.contains("alpha=1 mu=1 ke=false core=[]"), "{text}");
    assert!(text.contains("passed: 1\n"));
}

#[test]
fn oracle_limit_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_unicore"))
        .args(["verify", "--count", "5", "--max-n", "10", "--kind", "tree", "--json"])
        .env("UNICORE_ORACLE_LIMIT", "4")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["config"]["oracle_limit"], 4);
    let checked = v["outcomes"].as_array().unwrap().iter().filter(|o| o["n"].as_u64().unwrap() <= 4).count();
    assert_eq!(v["oracle_checked"], checked);
}
