use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn dyncore(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dyncore"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    assert!(
        o.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

const K4: &str = "0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n";

#[test]
fn core_of_k4_is_three_everywhere() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "k4.txt", K4);
    let fast = stdout(&dyncore(&["core", &g]));
    assert_eq!(fast, "0 3\n1 3\n2 3\n3 3\n");
    assert_eq!(stdout(&dyncore(&["core", &g, "--oracle"])), fast);
}

#[test]
fn truss_json_lists_every_edge() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "k4.txt", K4);
    let out = stdout(&dyncore(&["--format", "json", "truss", &g]));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let rows = v["truss_value"].as_array().unwrap();
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().all(|r| r[2] == 4));
}

#[test]
fn klcore_of_a_bidirected_triangle() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "d.txt", "0 1\n1 0\n1 2\n2 1\n0 2\n2 0\n2 3\n");
    assert_eq!(
        stdout(&dyncore(&["klcore", &g, "-k", "2", "-l", "2"])),
        "0\n1\n2\n"
    );
}

#[test]
fn twocore_trace_answers_match_the_oracle() {
    let dir = tempfile::tempdir().unwrap();
    let t = write(
        dir.path(),
        "t.txt",
        "twocore 4\n+ 0 1\n+ 1 2\n? 0\n+ 2 0\n? 0\n? 3\n- 0 1\n? 2\n",
    );
    let fast = stdout(&dyncore(&["twocore", &t]));
    assert_eq!(fast, "0\n1\n0\n0\n");
    assert_eq!(stdout(&dyncore(&["twocore", &t, "--oracle"])), fast);
}

#[test]
fn reduce_writes_bundles() {
    let dir = tempfile::tempdir().unwrap();
    let c = write(
        dir.path(),
        "c.txt",
        "gate 0 ONE\ngate 1 ONE\ngate 2 AND\noutput 2\nwire 0 2\nwire 1 2\n",
    );
    let out = dir.path().join("b");
    let o = stdout(&dyncore(&[
        "reduce",
        &c,
        "--target",
        "kcore",
        "-o",
        out.to_str().unwrap(),
    ]));
    assert!(o.starts_with("bundle"));
    assert!(out.join("manifest.json").exists() && out.join("target.edges").exists());

    let m = write(dir.path(), "m.txt", "10\n01\n");
    let out = dir.path().join("o");
    stdout(&dyncore(&[
        "reduce",
        &m,
        "--from",
        "oumv",
        "-o",
        out.to_str().unwrap(),
    ]));
    assert!(out.join("circuit.txt").exists());

    let f = write(dir.path(), "f.cnf", "p cnf 3 2\n1 2 0\n-1 3 0\n");
    let out = dir.path().join("s");
    let o = stdout(&dyncore(&[
        "reduce",
        &f,
        "--from",
        "ksat",
        "-o",
        out.to_str().unwrap(),
    ]));
    assert!(o.ends_with("sat\n") && !o.ends_with("unsat\n"));
    let f = write(dir.path(), "u.cnf", "p cnf 1 2\n1 0\n-1 0\n");
    let out = dir.path().join("u");
    assert!(stdout(&dyncore(&[
        "reduce",
        &f,
        "--from",
        "ksat",
        "-o",
        out.to_str().unwrap()
    ]))
    .ends_with("unsat\n"));
}

#[test]
fn reduce_without_target_fails() {
    let dir = tempfile::tempdir().unwrap();
    let c = write(
        dir.path(),
        "c.txt",
        "gate 0 ONE\ngate 1 OR\noutput 1\nwire 0 1\n",
    );
    let o = dyncore(&["reduce", &c, "-o", dir.path().join("x").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_and_bench_run() {
    let dir = tempfile::tempdir().unwrap();
    let o = stdout(&dyncore(&[
        "verify",
        "dynxor-e2e",
        "--trials",
        "2",
        "--failures",
        dir.path().to_str().unwrap(),
    ]));
    assert!(o.starts_with("PASS dynxor-e2e"));
    assert_eq!(dyncore(&["verify", "no-such-suite"]).status.code(), Some(2));
    let o = stdout(&dyncore(&[
        "--seed",
        "3",
        "bench",
        "twocore",
        "--sizes",
        "32,64",
        "--reps",
        "1",
        "--updates",
        "10",
        "--queries",
        "10",
    ]));
    assert_eq!(o.lines().count(), 3);
}

#[test]
fn missing_file_is_an_error() {
    let o = dyncore(&["core", "/nonexistent/graph.txt"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("/nonexistent/graph.txt"));
}
