use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn qrcert(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qrcert"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn certify_exit_codes() {
    let good = qrcert(&["certify", "Bw"]);
    assert_eq!(code(&good), 0);
    assert_eq!(json(&good)["method"], "FastPathRegular");

    let bad = qrcert(&["certify", "A_"]);
    assert_eq!(code(&bad), 1);
    let v = json(&bad);
    assert_eq!(v["verdict"], "Bad");
    assert!(v["witness"].is_object());

    assert_eq!(code(&qrcert(&["certify", "not a graph"])), 65);
    assert_eq!(code(&qrcert(&["certify"])), 64);
    assert_eq!(code(&qrcert(&["frobnicate"])), 64);
    assert_eq!(code(&qrcert(&["--threads", "0", "certify", "Bw"])), 64);
}

#[test]
fn certify_reads_edge_list_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p4.txt");
    fs::write(&path, "# path\n1 2\n2 3\n3 4\n").unwrap();
    let out = qrcert(&["certify", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["graph"], "Ch");
    assert_eq!(v["method"], "ResultantNoRoots");
}

#[test]
fn resultant_of_p4() {
    let out = qrcert(&["--human", "resultant", "--path", "4"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("32*u^9 - 72*u^8"), "{text}");

    let v = json(&qrcert(&["resultant", "--path", "4"]));
    assert_eq!(v["roots_01"], 0);
    assert_eq!(v["roots_1inf"], 1);
}

#[test]
fn survey_of_four_vertices() {
    let v = json(&qrcert(&["survey", "--m", "4"]));
    let rows = v["rows"].as_array().unwrap_or_else(|| panic!("{v}"));
    assert_eq!(rows.len(), 11);
    let bad = rows
        .iter()
        .filter(|r| r["certificate"]["verdict"] == "Bad")
        .count();
    assert_eq!(bad, 2);

    let dir = tempfile::tempdir().unwrap();
    let list = dir.path().join("list.g6");
    fs::write(&list, "Bw\nCh\n").unwrap();
    let v = json(&qrcert(&["survey", "--list", list.to_str().unwrap()]));
    assert_eq!(v["rows"].as_array().unwrap().len(), 2);

    assert_eq!(code(&qrcert(&["survey", "--m", "12"])), 64);
}

#[test]
fn bipartite_reports_roots() {
    let v = json(&qrcert(&["bipartite", "--a", "2", "--b", "4"]));
    assert_eq!(v["roots_01"], 1);
    assert_eq!(v["roots_1inf"], 0);
}

#[test]
fn lambda_affine_test() {
    let out = qrcert(&["lambda", "Ch", "--u", "1/2", "--v", "1/2", "--s", "1/2"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["bernstein"].as_array().unwrap().len(), 5);
    assert!(v["degree_le1"].is_object());
    // triples only need to be nonnegative
    assert_eq!(
        code(&qrcert(&[
            "lambda", "Ch", "--u", "2", "--v", "0", "--s", "0"
        ])),
        0
    );
    assert_eq!(
        code(&qrcert(&["lambda", "Ch", "--u=-1", "--v", "0", "--s", "0"])),
        64
    );
}

#[test]
fn count_with_parts_file() {
    let dir = tempfile::tempdir().unwrap();
    let parts = dir.path().join("parts.json");
    fs::write(&parts, "[[0,1],[2,3]]").unwrap();
    // C6 as an edge list, 0-based parts above refer to vertices 1..4
    let host = dir.path().join("c6.txt");
    fs::write(&host, "1 2\n2 3\n3 4\n4 5\n5 6\n6 1\n").unwrap();
    let run = |extra: &[&str]| {
        let mut args = vec![
            "count",
            "--pattern",
            "A_",
            "--host",
            host.to_str().unwrap(),
            "--parts",
            parts.to_str().unwrap(),
        ];
        args.extend_from_slice(extra);
        json(&qrcert(&args))
    };
    assert_eq!(run(&[])["count"], "1");
    assert_eq!(run(&["--symmetrize"])["count"], "1");
    assert_eq!(run(&["--summed"])["count"], "1");
    assert_eq!(run(&["--mults", "1,1"])["count"], "1");

    let v = json(&qrcert(&["count", "--pattern", "Bw", "--host", "Dr{"]));
    assert_eq!(v["kind"], "constrained");

    fs::write(&parts, "{\"parts\": [[0, 9]], \"assignment\": [0, 0]}").unwrap();
    let out = qrcert(&[
        "count",
        "--pattern",
        "A_",
        "--host",
        host.to_str().unwrap(),
        "--parts",
        parts.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 65);
}

#[test]
fn sampling_is_seeded() {
    let a = qrcert(&["sample", "gnp", "--n", "30", "--p", "1/3", "--seed", "5"]);
    let b = qrcert(&["sample", "gnp", "--n", "30", "--p", "1/3", "--seed", "5"]);
    let c = qrcert(&["sample", "gnp", "--n", "30", "--p", "1/3", "--seed", "6"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
    let t = qrcert(&[
        "sample", "twotype", "--n", "20", "--u", "1", "--v", "0", "--s", "1/2",
    ]);
    assert_eq!(code(&t), 0);
    assert_eq!(json(&t)["generator"]["model"], "two_type");
}

#[test]
fn experiment_output_is_thread_independent() {
    let args = [
        "experiment",
        "--pattern",
        "Bw",
        "--gen",
        "gnp",
        "--n",
        "40",
        "--p",
        "1/2",
        "--alphas",
        "1/4,1/4,1/4",
        "--trials",
        "6",
        "--seed",
        "3",
    ];
    let run = |threads: &str| {
        let mut all = vec!["--threads", threads];
        all.extend_from_slice(&args);
        let out = qrcert(&all);
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
        out.stdout
    };
    assert_eq!(run("1"), run("4"));
}

#[test]
fn out_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cert.json");
    let out = qrcert(&["--out", path.to_str().unwrap(), "certify", "Bw"]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["verdict"], "Good");
}

#[test]
fn help_for_every_subcommand() {
    for sub in [
        "certify",
        "survey",
        "bipartite",
        "lambda",
        "resultant",
        "count",
        "sample",
        "experiment",
    ] {
        let out = qrcert(&[sub, "--help"]);
        assert_eq!(code(&out), 0, "{sub}");
        assert!(
            String::from_utf8_lossy(&out.stdout).contains("Usage"),
            "{sub}"
        );
    }
    assert_eq!(code(&qrcert(&["--help"])), 0);
}
