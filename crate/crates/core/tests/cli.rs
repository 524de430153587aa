use std::fs;
use std::path::Path;
use std::process::Command;

use clawnet::cli::{run, RunReport};
use clawnet::hamilton::Certificate;

const NET: &str = "graph 6\n0 1\n0 2\n1 2\n0 3\n1 4\n2 5\n";
const CLAW: &str = "graph 4\n0 1\n0 2\n0 3\n";
const C6: &str = "graph 6\n0 1\n1 2\n2 3\n3 4\n4 5\n5 0\n";

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn go(args: &[&str]) -> (i32, RunReport) {
    let mut argv = vec!["clawnet"];
    argv.extend_from_slice(args);
    run(&argv)
}

#[test]
fn detect_finds_the_net() {
    let dir = tempfile::tempdir().unwrap();
    let net = write(dir.path(), "net.el", NET);
    let (code, r) = go(&["detect", "--pattern", "net", "--graph", &net]);
    assert_eq!(code, 0, "{r}");
    assert!(r.output.iter().any(|o| o.starts_with("match net")), "{r}");

    let (code, r) = go(&["detect", "--pattern", "all", "--graph", &net]);
    assert_eq!(code, 0);
    assert!(r.output.contains(&"none claw".to_string()), "{r}");
}

#[test]
fn shepherd_fails_on_the_claw_with_a_witness() {
    let dir = tempfile::tempdir().unwrap();
    let claw = write(dir.path(), "claw.el", CLAW);
    let (code, r) = go(&["structure", "--check", "shepherd", "--input", &claw]);
    assert_eq!(code, 1);
    assert!(r.entries[0].detail.contains("S=[0] v=0"), "{r}");
}

#[test]
fn usage_and_input_errors_exit_2() {
    assert_eq!(go(&["frobnicate"]).0, 2);
    assert_eq!(
        go(&["detect", "--pattern", "hexagon", "--graph", "x.el"]).0,
        2
    );
    assert_eq!(
        go(&["detect", "--pattern", "net", "--graph", "/no/such/file.el"]).0,
        2
    );
    assert_eq!(go(&["suite", "nonsense"]).0, 2);
    assert_eq!(go(&["--help"]).0, 0);

    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.el", "graph 2\n0 0\n");
    let (code, r) = go(&["detect", "--pattern", "claw", "--graph", &bad]);
    assert_eq!(code, 2);
    assert!(r.entries[0].detail.starts_with("[input]"), "{r}");
}

#[test]
fn depth_limit_is_enforced() {
    let dir = tempfile::tempdir().unwrap();
    let fam = write(dir.path(), "r2.fam", "kind=ray_blowup\nk=2\n");
    assert_eq!(
        go(&["hamilton", "spanning", "--family", &fam, "--depth", "65"]).0,
        2
    );
    assert_eq!(
        go(&["hamilton", "spanning", "--family", &fam, "--depth", "0"]).0,
        2
    );
}

#[test]
fn circle_certificate_written_and_verified() {
    let dir = tempfile::tempdir().unwrap();
    let fam = write(dir.path(), "dr2.fam", "kind=double_ray_blowup\nk=2\n");
    let cert = dir.path().join("dr2.cert");
    let cert_s = cert.to_str().unwrap();
    let args = [
        "hamilton", "circle", "--family", &fam, "--depth", "8", "--seed", "7", "--cert", cert_s,
    ];
    let (code, first) = go(&args);
    assert_eq!(code, 0, "{first}");
    assert!(Certificate::parse(&fs::read_to_string(&cert).unwrap()).is_ok());

    // same argv, same body
    let (_, second) = go(&args);
    assert_eq!(first.body(), second.body());

    let (code, r) = go(&["hamilton", "verify", "--certificate", cert_s, "--seed", "7"]);
    assert_eq!(code, 0, "{r}");
    assert!(r.entries.iter().any(|e| e.name == "cut-parity"));
}

#[test]
fn circle_on_a_ray_is_refused() {
    let dir = tempfile::tempdir().unwrap();
    let fam = write(dir.path(), "r1.fam", "kind=ray_blowup\nk=1\n");
    let (code, r) = go(&["hamilton", "circle", "--family", &fam, "--depth", "6"]);
    assert_eq!(code, 1);
    assert!(r.entries[0].detail.starts_with("[precondition]"), "{r}");
}

#[test]
fn leaftree_and_spanning_commands() {
    let dir = tempfile::tempdir().unwrap();
    let fam = write(dir.path(), "dr3.fam", "kind=double_ray_blowup\nk=3\n");
    let (code, r) = go(&[
        "hamilton", "leaftree", "--family", &fam, "--leaves", "0,w2", "--depth", "6",
    ]);
    assert_eq!(code, 0, "{r}");
    let (code, r) = go(&[
        "hamilton", "leaftree", "--family", &fam, "--leaves", "0,1,w1", "--depth", "6",
    ]);
    assert_eq!(code, 1, "{r}");
    let (code, r) = go(&["hamilton", "spanning", "--family", &fam, "--depth", "6"]);
    assert_eq!(code, 0, "{r}");
    assert!(r.output[0].starts_with("kind double-ray"), "{r}");
}

#[test]
fn oracle_and_corpus_commands() {
    let dir = tempfile::tempdir().unwrap();
    let c6 = write(dir.path(), "c6.el", C6);
    let (code, r) = go(&["oracle", "--op", "hamcycle", "--graph", &c6]);
    assert_eq!(code, 0);
    assert_eq!(
        r.output,
        vec!["witness 0-1 0-5 1-2 2-3 3-4 4-5".to_string()]
    );
    let (_, r) = go(&[
        "oracle", "--op", "hampath", "--graph", &c6, "--from", "0", "--to", "3",
    ]);
    assert_eq!(r.output, vec!["witness none".to_string()]);
    let (_, r) = go(&[
        "oracle", "--op", "leaftree", "--graph", &c6, "--leaves", "0,1",
    ]);
    // the only spanning tree of C6 with leaves 0 and 1 drops the edge 0-1
    assert_eq!(r.output, vec!["witness 0-5 1-2 2-3 3-4 4-5".to_string()]);

    let out = dir.path().join("corpus");
    let (code, r) = go(&[
        "corpus",
        "--filter",
        "claw-free,net-free,2-connected",
        "--n-max",
        "5",
        "--dir",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{r}");
    let files = fs::read_dir(&out).unwrap().count();
    assert!(files > 0);
    assert!(
        r.entries[0].detail.starts_with(&format!("{files} graphs")),
        "{r}"
    );
}

#[test]
fn out_flag_writes_a_parseable_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.txt");
    let (code, r) = go(&["suite", "two-ends", "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0, "{r}");
    let back = RunReport::parse(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(back.body(), r.body());
}

#[test]
fn binary_prints_the_report_and_sets_the_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let claw = write(dir.path(), "claw.el", CLAW);
    let out = Command::new(env!("CARGO_BIN_EXE_clawnet"))
        .args(["detect", "--pattern", "claw", "--graph", &claw])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("clawnet-report v1\n"));
    assert!(text.contains("output match claw"));

    let out = Command::new(env!("CARGO_BIN_EXE_clawnet"))
        .arg("suite")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn suites_pass() {
    for name in [
        "shep-2.9.1",
        "shep-2.9.2",
        "shep-2.1",
        "bullreduct",
        "two-ends",
    ] {
        let (code, r) = go(&["suite", name]);
        assert_eq!(code, 0, "{r}");
    }
}
