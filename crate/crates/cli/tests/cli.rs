use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_semiflag"))
        .args(args)
        .env_remove("SEMIFLAG_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn snake_pair() {
    let o = run(&["snake", "--lhs", "2,3", "--rhs", "1,4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), r#"{"S":[3,2,1],"k":1}"#);
}

#[test]
fn order_compare_products() {
    let o = run(&["order", "compare", "--n", "8", "--lhs", "123|46|1|1", "--rhs", "78|67|36|45"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), r#""GT""#);
}

#[test]
fn local_character_sp4() {
    let o = run(&["character", "local", "--type", "C", "--n", "2", "--lambda", "0,1", "--qmax", "8"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["dimension"], 5);
    assert_eq!(v["status"], "certified");
}

#[test]
fn inconclusive_local_character_exits_one() {
    let o = run(&["character", "local", "--type", "C", "--n", "2", "--lambda", "2,2", "--qmax", "2"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["status"], "inconclusive");
}

#[test]
fn malformed_subset_reports_position() {
    let o = run(&["snake", "--lhs", "1,x,3", "--rhs", "1,4"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("--lhs") && err.contains("position 2"), "{err}");
    let o = run(&["character", "weyl", "--n", "3", "--lambda", "1,,2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8(o.stderr).unwrap().contains("position 2"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["order", "compare", "--n", "3"]).status.code(), Some(2));
    assert_eq!(run(&["straighten", "minor", "--n", "2", "--set", "1,2"]).status.code(), Some(2));
    assert_eq!(run(&["character", "component", "--type", "C", "--n", "2", "--r", "1,1b"]).status.code(), Some(2));
    assert_eq!(run(&["snake", "--lhs", "1", "--rhs", "2", "--format", "csv"]).status.code(), Some(2));
}

#[test]
fn verification_failure_exits_one() {
    let dir = std::env::temp_dir().join(format!("semiflag-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("rel.json");
    let o = run(&["relations", "verify", "--n", "4", "--lhs", "2,3", "--rhs", "1,4", "--k-prime", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let g = run(&["relations", "generate", "--n", "4", "--max-size", "2", "--output", good.to_str().unwrap()]);
    assert_eq!(g.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&good).unwrap()).unwrap();
    let mut rel = v["relations"][0].clone();
    std::fs::write(&good, rel.to_string()).unwrap();
    assert_eq!(run(&["relations", "verify", "--input", good.to_str().unwrap()]).status.code(), Some(0));
    let c = rel["terms"][0]["coeff"].as_str().unwrap().to_string();
    rel["terms"][0]["coeff"] = serde_json::json!(match c.strip_prefix('-') { Some(p) => p.to_string(), None => format!("-{c}") });
    let bad = dir.join("bad.json");
    std::fs::write(&bad, rel.to_string()).unwrap();
    assert_eq!(run(&["relations", "verify", "--input", bad.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn seeded_output_is_deterministic() {
    let args = ["oracle", "sample", "--type", "C", "--n", "2", "--trunc", "2", "--count", "2", "--seed", "9"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let env = Command::new(env!("CARGO_BIN_EXE_semiflag"))
        .args(&args[..args.len() - 2])
        .env("SEMIFLAG_SEED", "9")
        .output()
        .unwrap();
    assert_eq!(env.stdout, a.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v[0]["seed"], 9);
}

#[test]
fn straightening_commands() {
    let o = run(&["straighten", "minor", "--n", "2", "--set", "1,1b"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["terms"], serde_json::json!([{"coeff": "-1", "set": "2,2b"}]));
    let o = run(&["straighten", "product", "--n", "4", "--lhs", "2,3", "--rhs", "1,4"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verified"], true);
    assert_eq!(v["terms"].as_array().unwrap().len(), 2);
}

#[test]
fn basis_and_characters() {
    let o = run(&["basis", "enumerate", "--n", "4", "--r", "2,3|1,4", "--dmax", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["counts"], serde_json::json!([0, 1, 2, 3]));
    let o = run(&["basis", "verify", "--n", "3", "--max-total", "2", "--dmax", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["character", "weyl", "--type", "C", "--n", "1", "--lambda", "1", "--qmax", "2", "--format", "csv"]);
    assert_eq!(stdout(&o), "w1,q,coeff\n-1,0,1\n-1,1,1\n-1,2,1\n1,0,1\n1,1,1\n1,2,1\n");
    let o = run(&["allowed", "--n", "3", "--size", "2"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["sizes"]["2"]["count"], 14);
}
