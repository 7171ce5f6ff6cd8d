use std::process::{Command, Output};

fn qchkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qchkit"))
        .args(args)
        .env_remove("QCHKIT_MAX_DEGREE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn lvector_table() {
    let o = qchkit(&["lvector", "--dim", "3", "--degrees", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    for row in ["0   6          6", "1   15         15", "2   6          6", "mu  27         27", "agree: true"] {
        assert!(out.contains(row), "{out}");
    }
}

#[test]
fn lvector_json_for_two_equations() {
    let o = qchkit(&["lvector", "--dim", "7", "--degrees", "3,2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["integrals"][0], "12");
    assert_eq!(v["generating_function"][0], "12");
    assert_eq!(v["ci"]["degrees"], serde_json::json!([2, 3]));
    assert_eq!(v["agree"], true);
}

#[test]
fn hypothesis_violation_is_a_validation_error() {
    let o = qchkit(&["lvector", "--dim", "2", "--degrees", "7"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("n >= 2Σ(d_i-1)-1 fails"), "{}", stderr(&o));
    assert!(stdout(&o).is_empty());
}

#[test]
fn odd_quadric_ring_is_rejected() {
    let o = qchkit(&["ring", "--dim", "3", "--degrees", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("H^n(X,Q) is nonzero"));
}

#[test]
fn even_quadric_ring_dump() {
    let o = qchkit(&["ring", "--dim", "4", "--degrees", "2", "--primitive-rank", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["report"]["violations"], serde_json::json!([]));
    assert_eq!(v["relations"]["mu"], "4");
    let ring = qchkit::cli::parse_ring_dump(&text).unwrap();
    assert!(ring.verify().is_clean());
}

#[test]
fn ring_with_explicit_pairing() {
    let o = qchkit(&["ring", "--dim", "3", "--degrees", "3", "--pairing", "0,2;-2,0", "--format", "table"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("pi_1 * pi_2 = -4*H_1 + 2/3*H_3"), "{}", stdout(&o));
    let o = qchkit(&["ring", "--dim", "3", "--degrees", "3", "--pairing", "0,1;1,0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn counts_from_cycles() {
    let o = qchkit(&["count", "conics", "--dim", "3", "--degrees", "3", "--cycles", "point,line,line"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("count: 14"));
    let o = qchkit(&["count", "cubics", "--dim", "3", "--degrees", "3", "--cycles", "point,point,point", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let row = out.lines().nth(1).unwrap();
    assert_eq!(row, "1,3,3,cubics,3;3;3,point;point;point,648,648,false,24,24,true");
}

#[test]
fn counts_from_codims() {
    let o = qchkit(&["count", "conics", "--dim", "3", "--degrees", "3", "--codims", "3,1,3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["formula"]["raw"], "108");
    assert_eq!(v["ring"]["count"], "54");
    assert_eq!(v["halved"], true);
    assert_eq!(v["codims"], serde_json::json!([1, 3, 3]));
}

#[test]
fn unbalanced_count() {
    let o = qchkit(&["count", "lines", "--dim", "3", "--degrees", "3", "--codims", "1,2,3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("sum to 6, expected n + j·k = 5"));
}

#[test]
fn verify_single_case() {
    let o = qchkit(&["verify", "--dim", "3", "--degrees", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("corpus.pairing_scale"));
    assert!(out.contains("overall: PASS"));
}

#[test]
fn injected_fault_fails_loudly() {
    let o = qchkit(&["verify", "--dim", "4", "--degrees", "3", "--inject-fault"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("overall: FAIL"));
    assert!(stderr(&o).contains("ring.axioms"));
}

#[test]
fn sweep_defaults() {
    let o = qchkit(&["sweep"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("schema_version,n,degrees,k,d,l_vector,mu,conics_two_points,cubics_three_points\n"));
    assert!(out.contains("\n1,3,3,2,3,6;15;6,27,6,24\n"));
    assert_eq!(out.lines().count(), 1 + 18);
}

#[test]
fn empty_sweep_warns() {
    let o = qchkit(&["sweep", "--max-degree", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 1);
    assert!(stderr(&o).contains("warning"));
}

#[test]
fn environment_caps_sweep() {
    let o = Command::new(env!("CARGO_BIN_EXE_qchkit"))
        .args(["sweep", "--max-degree", "5"])
        .env("QCHKIT_MAX_DEGREE", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    // only [2] and [2,2] at two dimensions each
    assert_eq!(stdout(&o).lines().count(), 1 + 4);
}

#[test]
fn output_file() {
    let dir = std::env::temp_dir().join(format!("qchkit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("l.csv");
    let o = qchkit(&["lvector", "--dim", "3", "--degrees", "3", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.contains("1,mu,27,27"));
    let bad = dir.join("missing").join("x.csv");
    let o = qchkit(&["lvector", "--dim", "3", "--degrees", "3", "--out", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    std::fs::remove_dir_all(&dir).unwrap();
}
