use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use bstconn::format::serialize_walk;
use bstconn::instances::Figure1Params;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_bstconn"))
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn run_with_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn decide_exit_statuses() {
    let f1 = fixture("figure1_n8.txt");
    let o = run(&["decide", f1.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "YES k0=4 g=1\n");

    let fwd = fixture("forward_edge.txt");
    let o = run(&["--json", "decide", fwd.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["answer"], "NO");
    assert_eq!(v["k0"], 1);
    assert_eq!(v["g"], 0);
    assert_eq!(v["reason"], "coset-misses-zero");

    let bad = fixture("malformed_self_loop.txt");
    let o = run(&["decide", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));

    let o = run(&["decide", "/nonexistent/instance.txt"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn disconnected_reports_reason() {
    let f = fixture("disconnected_n6.txt");
    let o = run(&["--json", "decide", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["reason"], "disconnected");
    assert!(v["k0"].is_null());
}

#[test]
fn witness_pipes_into_verify() {
    let f1 = fixture("figure1_n8.txt");
    let f1 = f1.to_str().unwrap();
    let w = run(&["witness", f1]);
    assert_eq!(w.status.code(), Some(0));
    let v = run_with_stdin(&["verify", f1, "-"], &w.stdout);
    assert_eq!(v.status.code(), Some(0));
    assert!(stdout(&v).starts_with("valid=true balanced=true endpoints_ok=true"));

    let fwd = fixture("forward_edge.txt");
    let w = run(&["witness", fwd.to_str().unwrap()]);
    assert_eq!(w.status.code(), Some(1));
    assert!(w.stdout.is_empty());
}

#[test]
fn verify_rejects_unbalanced_walk() {
    let fwd = fixture("forward_edge.txt");
    let o = run_with_stdin(&["--json", "verify", fwd.to_str().unwrap(), "-"], b"0 1\n");
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["valid"], true);
    assert_eq!(v["balanced"], false);
    assert_eq!(v["imbalance"], 1);

    let o = run_with_stdin(&["verify", fwd.to_str().unwrap(), "-"], b"0 x\n");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn rebalance_inflated_figure1_walk() {
    let dir = tempfile::tempdir().unwrap();
    let walk_path = dir.path().join("inflated.walk");
    let inflated = Figure1Params::new(8).unwrap().looped_walk(12, 8);
    assert_eq!(inflated.len(), 84);
    std::fs::write(&walk_path, serialize_walk(&inflated)).unwrap();

    let f1 = fixture("figure1_n8.txt");
    let o = run(&["--json", "rebalance", f1.to_str().unwrap(), walk_path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let len = v["length"].as_u64().unwrap();
    assert!(len <= 3 * 512);

    let walk: Vec<String> =
        v["walk"].as_array().unwrap().iter().map(|x| x.to_string()).collect();
    let back = run_with_stdin(&["verify", f1.to_str().unwrap(), "-"], walk.join(" ").as_bytes());
    assert_eq!(back.status.code(), Some(0));

    // unbalanced input is an input error
    let o = run_with_stdin(&["rebalance", f1.to_str().unwrap(), "-"], b"0 1 2 3 4\n");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn oracle_statuses() {
    let f1 = fixture("figure1_n8.txt");
    let o = run(&["oracle", f1.to_str().unwrap(), "--bound", "64"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "length=20\n");

    let tri = fixture("triangle.txt");
    let o = run(&["oracle", tri.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));

    let o = run(&["oracle", f1.to_str().unwrap(), "--max-states", "100"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn gen_is_deterministic_and_matches_fixture() {
    let args = ["gen", "random", "--n", "8", "--directed-p", "0.3", "--neutral-p", "0.2", "--seed", "42"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a), std::fs::read_to_string(fixture("random_n8_seed42.txt")).unwrap());

    let o = run(&["gen", "figure1", "--n", "10"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["gen", "degenerate", "--kind", "nope", "--n", "4"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn fixture_corpus_is_mutually_consistent() {
    for entry in std::fs::read_dir(fixture("")).unwrap() {
        let path = entry.unwrap().path();
        let name = path.file_name().unwrap().to_string_lossy().to_string();
        let p = path.to_str().unwrap();
        let decide = run(&["decide", p]);
        if name.starts_with("malformed") {
            assert_eq!(decide.status.code(), Some(2), "{name}");
            continue;
        }
        let yes = decide.status.code() == Some(0);
        let oracle = run(&["oracle", p]);
        assert_eq!(oracle.status.code() == Some(0), yes, "{name}: oracle disagrees");
        let witness = run(&["witness", p]);
        assert_eq!(witness.status.code() == Some(0), yes, "{name}: witness disagrees");
        if yes {
            let v = run_with_stdin(&["verify", p, "-"], &witness.stdout);
            assert_eq!(v.status.code(), Some(0), "{name}: witness rejected");
        }
    }
}

#[test]
fn bench_figure1_csv() {
    let o = run(&["bench", "figure1", "8..64", "--oracle-max-n", "16"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("family,n,verdict,witness_len,oracle_min,decide_ns,witness_ns"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 15);
    for (row, n) in rows.iter().zip((8..=64).step_by(4)) {
        assert_eq!(row[0], "figure1");
        assert_eq!(row[1].parse::<usize>().unwrap(), n);
        assert_eq!(row[2], "YES");
        let len: usize = row[3].parse().unwrap();
        assert!(len <= 16 * n * n * n);
        if n <= 16 {
            assert_eq!(row[4].parse::<usize>().unwrap(), n / 2 + n * n / 4);
        } else {
            assert_eq!(row[4], "");
        }
    }
}

#[test]
fn reduce_prints_trail() {
    let o = run(&["reduce", "--c", "2,3", "--k", "1", "--m=-100,67"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("m' = [2, -1]\n"));

    let o = run(&["--json", "reduce", "--c", "1,2,3", "--k", "3", "--m", "300,0,-99"]);
    let v = json(&o);
    assert_eq!(v["multipliers"], serde_json::json!([0, 0, 1]));
    assert_eq!(v["quotients"], serde_json::json!([100, 0]));

    let o = run(&["reduce", "--c", "2,4", "--k", "3"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["reduce", "--c", "2,3", "--k", "2", "--m", "1,1"]);
    assert_eq!(o.status.code(), Some(2));
}
