use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn ealab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ealab")).args(args).output().unwrap()
}

fn ealab_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_ealab"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn f(name: &str) -> String {
    fixture(name).to_str().unwrap().to_string()
}

#[test]
fn construct_pipes_into_check() {
    let chain = ealab(&["construct", "chain", "3"]);
    assert!(chain.status.success());
    let check = ealab_stdin(&["check"], &stdout(&chain));
    assert_eq!(check.status.code(), Some(0));
    assert!(stdout(&check).starts_with("ok"));
}

#[test]
fn broken_file_fails_check_with_witness() {
    let o = ealab(&["check", &f("broken.ea")]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).trim(), "violation Eiii: witness a");
}

#[test]
fn parse_errors_exit_2() {
    let o = ealab_stdin(&["check", "-"], "elements: 3\nnames: 0 a 1\nsum: a a 1\n");
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("one:"));
    assert_eq!(
        ealab(&["state", &f("chain3.ea"), "--mode", "bogus"]).status.code(),
        Some(2)
    );
    assert_eq!(ealab(&["check", "/nonexistent/file.ea"]).status.code(), Some(2));
}

#[test]
fn construct_output_matches_fixture() {
    let o = ealab(&["construct", "product", "(chain 3)", "(hsum (chain 3) (chain 3))"]);
    assert_eq!(stdout(&o), fs::read_to_string(fixture("e43.ea")).unwrap());
}

#[test]
fn subadditive_state_on_e43() {
    let o = ealab(&["state", &f("e43.ea"), "--mode", "subadditive"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("subadditive state:"));
    assert!(out.contains("(1,1) = 1\n"));
    // exact fractions only
    assert!(out
        .lines()
        .skip(1)
        .all(|l| !l.split(" = ").nth(1).unwrap().contains('.')));
}

#[test]
fn blocks_and_decompose() {
    let o = ealab(&["blocks", &f("e43.ea")]);
    assert_eq!(stdout(&o).lines().count(), 2);
    let o = ealab(&["decompose", &f("e43.ea")]);
    let out = stdout(&o);
    assert!(out.contains("(4 elements)") && out.contains("(3 elements)"), "{out}");
}

#[test]
fn analyze_report_verifies_and_detects_tampering() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.json");
    let r = report.to_str().unwrap();
    assert!(ealab(&["analyze", &f("e43.ea"), "--json", r]).status.success());
    let o = ealab(&["analyze", &f("e43.ea"), "--verify-report", r]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = fs::read_to_string(&report).unwrap();
    let tampered = text.replacen("\"is_mv\": false", "\"is_mv\": true", 1);
    assert_ne!(tampered, text);
    fs::write(&report, tampered).unwrap();
    assert_eq!(
        ealab(&["analyze", &f("e43.ea"), "--verify-report", r]).status.code(),
        Some(1)
    );
}

#[test]
fn certificates_in_reports_replay() {
    let dir = tempfile::tempdir().unwrap();
    let ea = dir.path().join("x.ea");
    fs::write(&ea, stdout(&ealab(&["construct", "hsum", "chain", "4", "chain", "3"]))).unwrap();
    let x = ea.to_str().unwrap();
    let o = ealab(&["state", x, "--mode", "subadditive"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("no subadditive state; certificate:"));

    let report = dir.path().join("r.json");
    let r = report.to_str().unwrap();
    assert!(ealab(&["analyze", x, "--json", r]).status.success());
    let text = fs::read_to_string(&report).unwrap();
    assert!(text.contains("\"obstruction\": \"no_state\""));
    assert_eq!(ealab(&["analyze", x, "--verify-report", r]).status.code(), Some(0));

    // with every multiplier zeroed the combination proves nothing
    let mut json: serde_json::Value = serde_json::from_str(&text).unwrap();
    let row = json["states"]
        .as_array_mut()
        .unwrap()
        .iter_mut()
        .find(|s| s["mode"] == "subadditive")
        .unwrap();
    for entry in row["certificate"].as_array_mut().unwrap() {
        entry["multiplier"] = "0".into();
    }
    fs::write(&report, serde_json::to_string_pretty(&json).unwrap()).unwrap();
    let o = ealab(&["analyze", x, "--verify-report", r]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("certificate does not replay"), "{}", stdout(&o));
}

#[test]
fn iso_command() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.ea");
    let b = dir.path().join("b.ea");
    fs::write(
        &a,
        stdout(&ealab(&["construct", "product", "chain", "2", "chain", "3"])),
    )
    .unwrap();
    fs::write(
        &b,
        stdout(&ealab(&["construct", "product", "chain", "3", "chain", "2"])),
    )
    .unwrap();
    let o = ealab(&["iso", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let o = ealab(&["iso", a.to_str().unwrap(), &f("e43.ea")]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).trim(), "not isomorphic");
}

#[test]
fn oml_constructions() {
    let o = ealab(&["construct", "from-oml", &f("mo2.poset")]);
    assert!(o.status.success());
    assert!(ealab_stdin(&["check"], &stdout(&o)).status.success());
    let o = ealab(&["construct", "from-oml", &f("o6.poset")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("orthomodular"));
}

#[test]
fn completion_of_bowtie() {
    let o = ealab(&["complete", &f("bowtie.poset")]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.starts_with("# 1 elements added\nelements: 7\n"), "{out}");
    assert!(out.contains("{0,x,y}"));
}

#[test]
fn enumerate_writes_corpus_and_census() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let o = ealab(&["enumerate", "--size", "4", "--out", d]);
    assert!(o.status.success());
    let files: Vec<_> = fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .filter(|n| n.ends_with(".ea"))
        .collect();
    assert_eq!(files.len(), 3);
    for name in &files {
        assert!(ealab(&["check", dir.path().join(name).to_str().unwrap()])
            .status
            .success());
    }
    let census = fs::read_to_string(dir.path().join("census.tsv")).unwrap();
    assert_eq!(census.lines().nth(1), Some("4\t3\t3\t2\t3\t2\t3"));
    assert_eq!(ealab(&["enumerate", "--size", "9", "--out", d]).status.code(), Some(2));
}

#[test]
fn dot_exports() {
    let o = ealab(&["export-dot", &f("chain3.ea")]);
    assert_eq!(
        stdout(&o),
        "digraph hasse {\n  rankdir=BT;\n  \"0\";\n  \"a\";\n  \"1\";\n  \"0\" -> \"a\";\n  \"a\" -> \"1\";\n}\n"
    );
    let o = ealab(&["export-dot", &f("e43.ea"), "--graph", "compat"]);
    let out = stdout(&o);
    assert!(out.starts_with("graph compatibility {"));
    assert!(!out.contains("\"(0,1/2_1)\" -- \"(0,1/2_2)\""));
}
