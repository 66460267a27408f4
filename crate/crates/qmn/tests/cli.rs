use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

use qmn_core::poset::example_strip;
use qmn_core::qsym::psi_to_monomial;
use qmn_core::{mn_expansion, Basis};

fn qmn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qmn"))
        .args(args)
        .env_remove("QMN_MAX_N")
        .output()
        .expect("binary runs")
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
        .display()
        .to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn temp_poset(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn expand_strip() {
    let o = qmn(&["expand", "--poset", &data("strip6.json")]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 40);
    for line in ["8\t1/1", "1,5,2\t-3/1", "3,3,2\t-6/1", "1,2,1,2,2\t8/1"] {
        assert!(text.lines().any(|l| l == line), "{line}");
    }
}

#[test]
fn expand_json_round_trips() {
    let o = qmn(&["expand", "--poset", &data("strip6.json"), "--json"]);
    let e = qmn::expr_from_json(stdout(&o).trim()).unwrap();
    assert_eq!(e, mn_expansion(&example_strip()));
    let again = qmn(&["expand", "--poset", &data("strip6.json"), "--json"]);
    assert_eq!(o.stdout, again.stdout);
}

#[test]
fn expand_in_other_bases() {
    let m = qmn(&[
        "expand",
        "--poset",
        &data("strip6.json"),
        "--basis",
        "M",
        "--json",
    ]);
    let m = qmn::expr_from_json(stdout(&m).trim()).unwrap();
    assert_eq!(m, psi_to_monomial(&mn_expansion(&example_strip())));
    let oracle = qmn(&["oracle", "--poset", &data("strip6.json"), "--json"]);
    assert_eq!(qmn::expr_from_json(stdout(&oracle).trim()).unwrap(), m);
    let psi = qmn(&[
        "expand",
        "--poset",
        &data("strip6.json"),
        "--basis",
        "Psi",
        "--json",
    ]);
    let psi = qmn::expr_from_json(stdout(&psi).trim()).unwrap();
    assert_eq!(psi.basis(), Basis::Psi);
    assert_eq!(psi.to_monomial(), m);
}

#[test]
fn singleton_monomial() {
    let f = temp_poset(r#"{"n":1,"covers":[],"labels":[1],"weights":[3]}"#);
    let o = qmn(&[
        "expand",
        "--poset",
        f.path().to_str().unwrap(),
        "--basis",
        "M",
    ]);
    assert_eq!(stdout(&o), "3\t1/1\n");
}

#[test]
fn cancellation_drops_zero_term() {
    let o = qmn(&["expand", "--poset", &data("cancel4.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!stdout(&o).lines().any(|l| l.starts_with("2,2\t")));
}

#[test]
fn verify_passes_and_corrupt_fails() {
    let ok = qmn(&["verify", "--poset", &data("strip6.json")]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(stdout(&ok), "PASS\n");
    let bad = qmn(&["verify", "--poset", &data("strip6.json"), "--corrupt"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).starts_with("FAIL: coefficient of M_8"));
}

#[test]
fn random_check_summary() {
    let o = qmn(&[
        "random-check",
        "--count",
        "100",
        "--n-max",
        "6",
        "--seed",
        "7",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "100/100 main, 100/100 addEdge, 100/100 splitWeight\nPASS\n"
    );
    let again = qmn(&[
        "random-check",
        "--count",
        "100",
        "--n-max",
        "6",
        "--seed",
        "7",
    ]);
    assert_eq!(o.stdout, again.stdout);
    let empty = qmn(&["random-check", "--count", "0"]);
    assert_eq!(empty.status.code(), Some(0));
    assert_eq!(
        stdout(&empty),
        "0/0 main, 0/0 addEdge, 0/0 splitWeight\nPASS\n"
    );
}

#[test]
fn guards() {
    let o = qmn(&["--max-n", "5", "expand", "--poset", &data("strip6.json")]);
    assert_eq!(o.status.code(), Some(3));
    let o = Command::new(env!("CARGO_BIN_EXE_qmn"))
        .args(["verify", "--poset", &data("strip6.json")])
        .env("QMN_MAX_N", "4")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    let o = qmn(&["random-check", "--n-max", "11"]);
    assert_eq!(o.status.code(), Some(3));
    let o = qmn(&["chi", "--n", "11"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn input_errors() {
    for text in [
        "{",
        r#"{"n":1,"covers":[],"labels":[1],"weights":[-1]}"#,
        r#"{"n":2,"covers":[[0,1],[1,0]],"labels":[1,2],"weights":[1,1]}"#,
        r#"{"n":2,"covers":[],"labels":[1,1],"weights":[1,1]}"#,
    ] {
        let f = temp_poset(text);
        let o = qmn(&["oracle", "--poset", f.path().to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(2), "{text}");
    }
    assert_eq!(
        qmn(&["oracle", "--poset", "/nonexistent.json"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        qmn(&["expand", "--poset", &data("cancel4.json"), "--basis", "X"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        qmn(&["schur", "--shape", "2,1", "--inner", "3"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn chi_table_json() {
    let o = qmn(&["chi", "--n", "3", "--json"]);
    let table: qmn::ChiTable = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(table.n, 3);
    assert_eq!(table.table.len(), 9);
    let entry = table
        .table
        .iter()
        .find(|e| e.lambda == "2,1" && e.mu == "1,1,1")
        .unwrap();
    assert_eq!(entry.chi, 2);
}

#[test]
fn schur_expansion() {
    let o = qmn(&["schur", "--shape", "2,1"]);
    assert_eq!(stdout(&o), "1,1,1\t2/1\n3\t-1/1\n");
    let skew = qmn(&["schur", "--shape", "2,1", "--inner", "1"]);
    assert_eq!(stdout(&skew), "1,1\t2/1\n");
}

#[test]
fn identities_report() {
    let o = qmn(&["identities", "--d", "1,2,2", "--json"]);
    assert_eq!(
        stdout(&o).trim(),
        r#"{"d":"1,2,2","sum":"1/1","q_identity":true,"linext_lhs":"120","linext_rhs":"120"}"#
    );
    let o = qmn(&[
        "identities",
        "--d",
        "1,1",
        "--samples",
        "100000",
        "--seed",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("beta 2\t1/2\t"));
    assert!(text.contains("beta 1,1\t1/2\t"));
}
