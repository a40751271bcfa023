use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .display()
        .to_string()
}

fn vda(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vda"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = vda(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stderr(&o));
    stdout(&o)
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    serde_json::from_str(&ok(&full)).unwrap()
}

#[test]
fn solve_prints_solutions_and_ordering() {
    let out = ok(&["solve", &fixture("eldercare.json"), "S1"]);
    assert!(out.contains("solutions: warn\n"), "{out}");
    assert!(out.contains("ordering: warn ≥{u3, u5} notify"), "{out}");
    let v = json(&["solve", &fixture("eldercare.json"), "S1"]);
    assert_eq!(v["solutions"]["actions"], serde_json::json!(["warn"]));
}

#[test]
fn justify_lists_rules_arguments_and_grounded_extension() {
    let out = ok(&["justify", &fixture("eldercare.json"), "S1"]);
    assert!(out.contains("r5: ¬v_S1(charge) ← u7, v_S1(warn)"), "{out}");
    assert!(out.contains("E1: {X2, X5, X8, X9}"), "{out}");
    assert!(out.contains("justified actions: warn"), "{out}");
    let v = json(&["justify", &fixture("eldercare.json"), "S1"]);
    assert_eq!(v["graph"]["arguments"].as_array().unwrap().len(), 10);
}

#[test]
fn dot_output_has_one_node_per_argument() {
    let out = ok(&["justify", &fixture("eldercare.json"), "S1", "--dot"]);
    assert!(out.starts_with("digraph aaf {"));
    let nodes = out.lines().filter(|l| l.contains("[label=")).count();
    let edges = out.lines().filter(|l| l.contains(" -> ")).count();
    assert_eq!((nodes, edges), (10, 10));
    assert!(out.contains("X5 -> X1"));
}

#[test]
fn nixon_has_two_preferred_extensions() {
    let v = json(&[
        "justify",
        &fixture("nixon.json"),
        "--semantics",
        "preferred",
    ]);
    assert_eq!(v["graph"]["extensions"].as_array().unwrap().len(), 2);
    let grounded = json(&["justify", &fixture("nixon.json")]);
    assert_eq!(grounded["graph"]["extensions"], serde_json::json!([[]]));
}

#[test]
fn epistemic_rebuilds_the_justified_situation() {
    let out = ok(&["epistemic", &fixture("eldercare.json"), "S2"]);
    assert!(
        out.contains("justified perceptions: lb, mrt, r, rm, ab"),
        "{out}"
    );
    assert!(out.contains("declared situation: S2J"), "{out}");
    let by_flag = ok(&[
        "epistemic",
        &fixture("eldercare.json"),
        "--perceptions",
        "mrt,r,rm,fc,lb,ab",
    ]);
    assert!(
        by_flag.contains("justified perceptions: lb, mrt, r, rm, ab"),
        "{by_flag}"
    );
}

#[test]
fn indeterminate_perceptions_exit_with_domain_error() {
    let o = vda(&["epistemic", &fixture("symmetric.json"), "S"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(
        stderr(&o).contains("undecided assumptions p, ¬p"),
        "{}",
        stderr(&o)
    );
}

#[test]
fn explain_names_the_attacker_and_its_premises() {
    let out = ok(&["explain", &fixture("eldercare.json"), "S1", "charge"]);
    assert!(
        out.contains("X5 = {u7, v_S1(warn)} ⊢ ¬v_S1(charge)"),
        "{out}"
    );
    assert!(out.contains("Minimize Harm to Patient"), "{out}");
    assert!(!out.contains("MG2P"), "{out}");
    let warn = ok(&["explain", &fixture("eldercare.json"), "S1", "warn"]);
    assert!(
        warn.contains("warn is a skeptically justified action"),
        "{warn}"
    );
    let remind = ok(&["explain", &fixture("eldercare.json"), "S1", "remind"]);
    assert!(remind.contains("rejected a priori"), "{remind}");
}

#[test]
fn explain_situation_cites_defenders() {
    let out = ok(&["explain", &fixture("eldercare.json"), "S2", "--situation"]);
    assert!(out.contains("lb is defended by Y4 and Y6."), "{out}");
}

#[test]
fn unknown_action_is_a_domain_error() {
    let o = vda(&["explain", &fixture("eldercare.json"), "S1", "dance"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("error: "));
}

#[test]
fn malformed_input_exits_two_with_position() {
    let dir = std::env::temp_dir().join(format!("vda-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{\n  \"language\": {\n    \"atoms\": [,]\n  }\n}\n").unwrap();
    let o = vda(&["solve", bad.to_str().unwrap(), "S1"]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("line 3") && err.contains("column 15"), "{err}");

    let text = std::fs::read_to_string(fixture("eldercare.json"))
        .unwrap()
        .replacen("[0, 1, -1, -1, 0, 0, 0]", "[0, 1, -1, -1, 0, 0]", 1);
    let short = dir.join("short.json");
    std::fs::write(&short, text).unwrap();
    let o = vda(&["solve", short.to_str().unwrap(), "S1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("row `charge`"), "{}", stderr(&o));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn missing_file_and_bad_usage_exit_two() {
    assert_eq!(
        vda(&["solve", "/nonexistent/agent.json", "S1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(vda(&["solve"]).status.code(), Some(2));
    let o = vda(&["solve", &fixture("nixon.json"), "S1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn single_action_agent_is_its_own_solution() {
    let out = ok(&["solve", &fixture("single.json"), "S"]);
    assert!(out.contains("solutions: stay"), "{out}");
    let j = ok(&["justify", &fixture("single.json"), "S"]);
    assert!(j.contains("justified actions: stay"), "{j}");
}

#[test]
fn oracle_check_agrees() {
    let out = ok(&["oracle-check", "--count", "30"]);
    assert!(
        out.contains("solutions vs brute force: 0 mismatches"),
        "{out}"
    );
    assert!(
        out.contains("semantics vs brute force: 0 mismatches"),
        "{out}"
    );
}
