//! The `strongsplit` binary: exit codes, reproducible generation and the
//! decompose / verify round trip.

use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn run(args: &[&str], stdin: &str) -> Output {
    run_env(args, stdin, &[])
}

fn run_env(args: &[&str], stdin: &str, env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_strongsplit"));
    cmd.args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped());
    for (k, v) in env {
        cmd.env(k, v);
    }
    let mut child = cmd.spawn().unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(stdout(o).trim()).unwrap()
}

fn gallery(name: &str) -> String {
    stdout(&run(&["gallery", "--name", name], ""))
}

#[test]
fn exit_codes() {
    let k4 = stdout(&run(&["gallery", "--name", "Kn", "--size", "4"], ""));
    let o = run(&["decompose"], &k4);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["status"], "decomposed");

    let o = run(&["decompose"], &gallery("S4"));
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(json(&o)["kind"], "S4");

    let c5 = r#"{"n":5,"arcs":[[0,1],[1,0],[1,2],[2,1],[2,3],[3,2],[3,4],[4,3],[4,0],[0,4]]}"#;
    let o = run(&["decompose"], c5);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(json(&o)["status"], "out_of_scope");

    assert_eq!(run(&["decompose"], "not json").status.code(), Some(4));
    assert_eq!(run(&["decompose"], r#"{"n":2,"arcs":[[0,5]]}"#).status.code(), Some(4));
    let o = run_env(&["decompose"], &k4, &[("STRONGSPLIT_BUDGET", "lots")]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn not_two_arc_strong_gives_a_witness() {
    let c5 = stdout(&run(&["gallery", "--name", "Cn", "--size", "5"], ""));
    let o = run(&["decompose"], &c5);
    assert_eq!(o.status.code(), Some(2));
    let v = json(&o);
    assert_eq!(v["status"], "not_2_arc_strong");
    assert_eq!(v["witness"]["crossing"].as_array().unwrap().len(), 1);
}

#[test]
fn gen_is_reproducible() {
    let args = ["gen", "--kind", "extension", "--t", "7", "--quotient-cut-arcs", "2", "--seed", "9"];
    let a = run(&args, "");
    let b = run(&args, "");
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["gen", "--kind", "extension", "--t", "7", "--quotient-cut-arcs", "2", "--seed", "10"], "");
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn decompose_then_verify() {
    let dir = std::env::temp_dir().join(format!("strongsplit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for (i, cuts) in ["0", "1", "2", "3"].into_iter().enumerate() {
        let g = stdout(&run(&["gen", "--t", "8", "--quotient-cut-arcs", cuts, "--seed", "4"], ""));
        let path = dir.join(format!("g{i}.json"));
        std::fs::write(&path, &g).unwrap();
        let dec = run(&["decompose"], &g);
        assert_eq!(dec.status.code(), Some(0), "{cuts}: {}", stdout(&dec));
        let ok = run(&["verify", "--graph", path.to_str().unwrap()], &stdout(&dec));
        assert_eq!(ok.status.code(), Some(0));
        assert_eq!(json(&ok)["valid"], true);

        // dropping an arc leaves the partition incomplete
        let mut v = json(&dec);
        v["a1"].as_array_mut().unwrap().pop();
        let bad = run(&["verify", "--graph", path.to_str().unwrap()], &v.to_string());
        assert_eq!(bad.status.code(), Some(2));
        assert_eq!(json(&bad)["valid"], false);
    }
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn gallery_names_round_trip() {
    let names = json(&run(&["gallery"], ""));
    for name in names["names"].as_array().unwrap() {
        let name = name.as_str().unwrap();
        let g = run(&["gallery", "--name", name], "");
        assert_eq!(g.status.code(), Some(0), "{name}");
        let back = run(&["karc", "-k", "1"], &stdout(&g));
        assert!(matches!(back.status.code(), Some(0) | Some(2)), "{name}");
    }
    assert_eq!(run(&["gallery", "--name", "nope"], "").status.code(), Some(4));
}

#[test]
fn exceptions_are_refuted_by_the_oracle() {
    for name in ["S4", "S41", "S42", "S43", "S44", "S45", "S46", "C3_222", "C3_22P2", "C3_223"] {
        let o = run(&["oracle", "--exhaustive"], &gallery(name));
        assert_eq!(o.status.code(), Some(2), "{name}");
        assert_eq!(json(&o)["status"], "proven_none");
        let o = run(&["decompose"], &gallery(name));
        assert_eq!(json(&o)["kind"], name);
    }
}

#[test]
fn recognize_reports_classes() {
    let o = run(&["recognize"], &gallery("T4s_2221"));
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let total: usize = v["classes"].as_array().unwrap().iter().map(|c| c.as_array().unwrap().len()).sum();
    assert_eq!(total, 7);
}
