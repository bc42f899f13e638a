use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tspk_cli::bench::{bench_aggregate, read_rows};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn tspk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tspk"))
        .args(args)
        .output()
        .expect("run tspk")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn audit_prints_compact_json() {
    let o = tspk(&["audit", &fixture("inst4.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "{\"k\":1,\"k_T\":3,\"bad\":[0,1,2],\"good\":[3],\"violating\":[[0,1,2]]}\n"
    );
    let o = tspk(&["audit", &fixture("sq4.tsp")]);
    assert_eq!(
        stdout(&o),
        "{\"k\":0,\"k_T\":0,\"bad\":[],\"good\":[0,1,2,3],\"violating\":[]}\n"
    );
}

#[test]
fn solve_and_exact() {
    let o = tspk(&["solve", &fixture("inst4.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "{\"instance\":\"INST4\",\"n\":4,\"cost\":13,\"tour\":[0,2,1,3],\"k\":1,\"k_T\":3,\"layouts\":3,\"certified\":3,\"regime\":\"layouts\"}\n"
    );
    assert!(stderr(&o).starts_with("time_ms: "));
    let o = tspk(&["solve", &fixture("sq4.tsp"), "--exact", "--jobs", "2"]);
    assert!(stdout(&o).contains("\"cost\":8,"));
    assert!(stdout(&o).contains("\"ratio\":1.0"));
    let o = tspk(&["exact", &fixture("inst4.json")]);
    assert_eq!(
        stdout(&o),
        "{\"instance\":\"INST4\",\"n\":4,\"cost\":13,\"tour\":[0,2,1,3]}\n"
    );
}

#[test]
fn exit_codes() {
    let o = tspk(&["solve", &fixture("inst4.json"), "--max-bad", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr(&o).lines().count(), 1);
    assert!(stderr(&o).contains("too many bad vertices"));

    assert_eq!(tspk(&["solve", "/nonexistent/file.json"]).status.code(), Some(1));
    assert_eq!(
        tspk(&["solve", &fixture("inst4.json"), "--bogus"]).status.code(),
        Some(1)
    );
    assert_eq!(tspk(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(tspk(&["--help"]).status.code(), Some(0));
    assert_eq!(
        tspk(&["gen", "--planted", "--n", "8", "--seed", "1", "-o", "x.json"])
            .status
            .code(),
        Some(1)
    );

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"name\":\"x\",\"n\":2,\"cost\":[[0,1],[2,0]]}").unwrap();
    let o = tspk(&["audit", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("asymmetric"));
    std::fs::write(&bad, "{\"name\":\"x\",\n \"n\": 2,\n \"cost\": [[0,1],[1,0]],}").unwrap();
    let o = tspk(&["audit", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));

    let big = dir.path().join("big.json");
    let o = tspk(&[
        "gen",
        "--metric",
        "--n",
        "19",
        "--seed",
        "0",
        "-o",
        big.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(tspk(&["exact", big.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(
        tspk(&["solve", big.to_str().unwrap(), "--exact"]).status.code(),
        Some(2)
    );
}

#[test]
fn generated_instances_respect_the_planted_subset() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x.json");
    let p = path.to_str().unwrap();
    let o = tspk(&["gen", "--planted", "--n", "10", "--bad", "4", "--seed", "2", "-o", p]);
    assert_eq!(o.status.code(), Some(0));
    let gen: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let audit: serde_json::Value = serde_json::from_str(&stdout(&tspk(&["audit", p]))).unwrap();
    let chosen: Vec<u64> = gen["chosen"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_u64().unwrap())
        .collect();
    for v in audit["bad"].as_array().unwrap() {
        assert!(chosen.contains(&v.as_u64().unwrap()));
    }
    assert_eq!(gen["bad"], audit["bad"]);

    let again = dir.path().join("y.json");
    tspk(&[
        "gen",
        "--planted",
        "--n",
        "10",
        "--bad",
        "4",
        "--seed",
        "2",
        "-o",
        again.to_str().unwrap(),
    ]);
    assert_eq!(std::fs::read(&path).unwrap(), std::fs::read(&again).unwrap());
}

fn body_without_time(path: &Path) -> Vec<String> {
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .map(|l| {
            let mut cols: Vec<&str> = l.split(',').collect();
            cols.remove(10);
            cols.join(",")
        })
        .collect()
}

#[test]
fn bench_appends_and_reproduces() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("corpus");
    std::fs::create_dir(&corpus).unwrap();
    std::fs::copy(fixture("inst4.json"), corpus.join("inst4.json")).unwrap();
    std::fs::copy(fixture("sq4.tsp"), corpus.join("sq4.tsp")).unwrap();
    std::fs::write(corpus.join("notes.txt"), "ignored").unwrap();

    let csv = dir.path().join("out.csv");
    let c = corpus.to_str().unwrap();
    let o = tspk(&["bench", "--dir", c, "--out", csv.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("max ratio 1.0000"));
    let rows = read_rows(&csv).unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(bench_aggregate(&rows).unwrap().max_ratio, Some((1, 1)));
    let first = body_without_time(&csv);
    assert_eq!(
        first[0],
        "instance,n,k,k_T,alg_cost,opt_cost,ratio_num,ratio_den,layouts,certified,seed"
    );
    assert_eq!(first[1], "INST4,4,1,3,13,13,1,1,3,3,");

    let o = tspk(&["bench", "--dir", c, "--out", csv.to_str().unwrap(), "--jobs", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let second = body_without_time(&csv);
    assert_eq!(second.len(), 5);
    assert_eq!(&second[1..3], &second[3..5]);

    let planted = corpus.join("planted.json");
    tspk(&[
        "gen",
        "--planted",
        "--n",
        "9",
        "--bad",
        "5",
        "--seed",
        "4",
        "-o",
        planted.to_str().unwrap(),
    ]);
    let o = tspk(&["bench", "--dir", c, "--out", csv.to_str().unwrap(), "--max-bad", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("skipped"));
    let o = tspk(&["bench", "--dir", c, "--out", dir.path().join("p.csv").to_str().unwrap()]);
    let rows = read_rows(&dir.path().join("p.csv")).unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        rows.iter().find(|r| r.instance.starts_with("planted")).unwrap().seed,
        Some(4)
    );
}

#[test]
fn empty_corpus_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("out.csv");
    let o = tspk(&[
        "bench",
        "--dir",
        dir.path().to_str().unwrap(),
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("no rows"));
}

#[test]
fn in_process_runner_matches_the_binary() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = tspk_cli::run(["tspk", "exact", &fixture("sq4.tsp")], &mut out, &mut err);
    assert_eq!(code, 0);
    assert_eq!(out, tspk(&["exact", &fixture("sq4.tsp")]).stdout);
}
