use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_planar-multicut"));
    for var in ["PMC_DELTA", "PMC_SEPARATOR_MODE", "PMC_SEED", "PMC_EXACT", "PMC_AUDIT"] {
        c.env_remove(var);
    }
    c
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("pmc-cli-{}-{name}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(c: &mut Command) -> Output {
    c.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

#[test]
fn gen_solve_verify_round_trip() {
    let dir = scratch("pipeline");
    let inst = dir.join("grid.json");
    let o = run(bin().args(["gen", "--kind", "grid", "--n", "16", "--k", "2", "--seed", "3", "-o"]).arg(&inst));
    assert!(o.status.success());

    let again = run(bin().args(["gen", "--kind", "grid", "--n", "16", "--k", "2"]).env("PMC_SEED", "3"));
    assert_eq!(stdout(&again).trim_end(), fs::read_to_string(&inst).unwrap().trim_end());

    let report = dir.join("report.json");
    let o = run(bin().arg("solve").arg(&inst).arg("-o").arg(&report));
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let r: serde_json::Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    let cost = r["cut"]["cost"].as_f64().unwrap();
    assert!(cost >= r["lp_value"].as_f64().unwrap() - 1e-6);

    let cut = dir.join("cut.json");
    fs::write(&cut, r["cut"].to_string()).unwrap();
    let o = run(bin().arg("verify").arg(&inst).arg(&cut).arg("--exact"));
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["feasible"], true);
    assert!(v["opt"]["cost"].as_f64().unwrap() <= cost);

    let empty = dir.join("empty.json");
    fs::write(&empty, r#"{"cut": [], "cost": 0}"#).unwrap();
    let o = run(bin().arg("verify").arg(&inst).arg(&empty));
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["feasible"], false);
    assert!(json(&o)["witness"]["path"].as_array().unwrap().len() >= 2);
}

#[test]
fn lp_and_layers_emit_json() {
    let dir = scratch("lp");
    let inst = dir.join("tri.json");
    assert!(run(bin().args(["gen", "--kind", "triangulation", "--n", "30", "--k", "3", "-o"]).arg(&inst)).status.success());
    let o = run(bin().arg("lp").arg(&inst));
    assert!(o.status.success());
    assert!(json(&o)["value"].as_f64().unwrap() >= 0.0);
    let o = run(bin().arg("layers").arg(&inst).args(["--separator-mode", "half"]));
    assert!(o.status.success());
    let l = json(&o);
    let placed: usize = l["layers"].as_array().unwrap().iter().map(|a| a.as_array().unwrap().len()).sum();
    assert!(placed <= 30);
}

#[test]
fn solve_with_audit_has_no_violations() {
    let dir = scratch("audit");
    let inst = dir.join("tri.json");
    assert!(run(bin().args(["gen", "--kind", "triangulation", "--n", "25", "--k", "2", "--seed", "9", "-o"]).arg(&inst)).status.success());
    let o = run(bin().arg("solve").arg(&inst).env("PMC_AUDIT", "true"));
    assert!(o.status.success(), "{}", stdout(&o));
    let audits = json(&o)["audit"].as_array().unwrap().clone();
    assert!(!audits.is_empty());
    assert!(audits.iter().all(|a| a["violations"] == 0));
}

#[test]
fn bad_delta_is_an_error() {
    let dir = scratch("delta");
    let inst = dir.join("g.json");
    assert!(run(bin().args(["gen", "--n", "9", "-o"]).arg(&inst)).status.success());
    let o = run(bin().arg("solve").arg(&inst).args(["--delta", "0.5"]));
    assert_eq!(o.status.code(), Some(2));
    let o = run(bin().arg("solve").arg(&inst).env("PMC_DELTA", "0"));
    assert_eq!(o.status.code(), Some(2));
    let o = run(bin().arg("solve").arg(dir.join("missing.json")));
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn audit_subcommand_over_a_generated_corpus() {
    let o = run(bin().args(["audit", "--count", "4", "--n-max", "30", "--check", "lemma1,claim2,lemma7"]));
    assert!(o.status.success(), "{}", stdout(&o));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 4);
    assert!(text.lines().skip(1).all(|l| l.split('\t').nth(3) == Some("0")));
}

#[test]
fn bench_tables_are_reproducible() {
    let args = ["bench", "--count", "5", "--n-max", "14", "--exact", "--no-timing", "--delimiter", ","];
    let a = stdout(&run(bin().args(args)));
    let b = stdout(&run(bin().args(args)));
    assert_eq!(a, b);
    let header = a.lines().next().unwrap();
    assert!(header.contains("opt") && !header.contains("wall_ms"));
    assert_eq!(a.lines().filter(|l| !l.starts_with('#')).count(), 6);

    let empty = stdout(&run(bin().args(["bench", "--count", "0"])));
    assert_eq!(empty.lines().count(), 1);
}

#[test]
fn reduce_edges_produces_a_node_instance() {
    let dir = scratch("reduce");
    let input = dir.join("edges.json");
    fs::write(
        &input,
        r#"{"n": 3, "edges": [[0, 1, 3.0], [1, 2, 7.0]], "coords": [[0, 0], [1, 0], [2, 0]], "pairs": [[0, 2]]}"#,
    )
    .unwrap();
    let out = dir.join("nodes.json");
    assert!(run(bin().arg("reduce-edges").arg(&input).arg("-o").arg(&out)).status.success());
    let o = run(bin().arg("solve").arg(&out));
    assert!(o.status.success());
    assert_eq!(json(&o)["cut"]["cost"].as_f64(), Some(3.0));
}
