use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_filtered-ends"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn job_file(text: &str) -> tempfile::NamedTempFile {
    let f = tempfile::Builder::new().suffix(".toml").tempfile().unwrap();
    std::fs::write(f.path(), text).unwrap();
    f
}

fn jobs_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../jobs")
}

#[test]
fn inline_pair_ends() {
    let o = run(&[
        "pair-ends",
        "--group",
        "abelian:2",
        "--subgroup",
        "x",
        "--nmax",
        "4",
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    let t = &v["results"][0];
    assert_eq!(t["task"], "pair-ends");
    assert_eq!(t["value"], 2);
    assert_eq!(t["stabilized"], true);
    assert_eq!(t["counts_per_level"], serde_json::json!([2, 2, 2, 2, 2]));
    assert!(v["elapsed_ms"].is_u64());
}

#[test]
fn free_group_ends_inconclusive() {
    let o = run(&["ends", "--group", "free:2", "--nmax", "3"]);
    assert_eq!(code(&o), 3);
    let t = &json(&o)["results"][0];
    assert_eq!(t["verdict"], "INCONCLUSIVE");
    assert_eq!(t["increasing"], true);
    assert_eq!(t["value"], Value::Null);
    assert_eq!(t["counts_per_level"], serde_json::json!([4, 12, 36, 108]));
}

#[test]
fn inline_check() {
    let o = run(&[
        "check",
        "--group",
        "abelian:2",
        "--h",
        "x",
        "--k",
        "x x",
        "--nmax",
        "4",
    ]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    for (i, task) in ["check-corollary", "check-monotonicity"].iter().enumerate() {
        let t = &v["results"][i];
        assert_eq!(t["task"], *task);
        assert_eq!(t["verdict"], "CONFIRMED");
        assert_eq!(t["value"], 2);
        assert_eq!(t["regime"]["label"], "n-below");
        assert_eq!(t["regime"]["predicted"], 2);
    }
    assert_eq!(v["results"][0]["corollary"]["predicted"], 2);
}

#[test]
fn exit_codes() {
    let undefined = job_file(
        "[group]\nfamily = \"free\"\nrank = 2\n[[tasks]]\nkind = \"pair-ends\"\nsubgroup = \"H\"\n",
    );
    let path = undefined.path().to_str().unwrap();
    assert_eq!(code(&run(&["pair-ends", "--job", path])), 66);

    let broken = job_file("[group\n");
    assert_eq!(
        code(&run(&["ends", "--job", broken.path().to_str().unwrap()])),
        65
    );

    assert_eq!(
        code(&run(&[
            "check",
            "--group",
            "abelian:2",
            "--h",
            "x",
            "--k",
            "y"
        ])),
        67
    );
    assert_eq!(
        code(&run(&[
            "ends", "--group", "free:2", "--nmax", "6", "--budget", "1000"
        ])),
        68
    );
    assert_eq!(code(&run(&["ends", "--job", "/nonexistent/job.toml"])), 69);

    assert_eq!(code(&run(&["ends"])), 64);
    assert_eq!(code(&run(&["ends", "--group", "free:2", "--bogus"])), 64);
    assert_eq!(
        code(&run(&["ends", "--group", "free:2", "--format", "png"])),
        64
    );
    assert_eq!(code(&run(&["ends", "--group", "cyclic:2"])), 64);
    assert_eq!(code(&run(&["check", "--group", "free:2", "--h", "a"])), 64);
    assert_eq!(code(&run(&["--help"])), 0);

    let o = run(&["ends", "--group", "free:2", "--bogus"]);
    assert!(o.stdout.is_empty());
    assert!(!o.stderr.is_empty());
}

#[test]
fn deterministic_without_timing() {
    let job = jobs_dir().join("chain_z2.toml");
    let job = job.to_str().unwrap();
    let a = run(&["check", "--job", job, "--nmax", "3", "--no-timing"]);
    let b = run(&["check", "--job", job, "--nmax", "3", "--no-timing"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert!(!String::from_utf8_lossy(&a.stdout).contains("elapsed_ms"));

    // With timing on, only the timing fields differ.
    let strip = |o: &Output| {
        let mut v = json(o);
        v.as_object_mut().unwrap().remove("elapsed_ms");
        for t in v["results"].as_array_mut().unwrap() {
            t.as_object_mut().unwrap().remove("elapsed_ms");
        }
        v
    };
    let timed = run(&["check", "--job", job, "--nmax", "3"]);
    assert_eq!(strip(&timed), json(&a));
}

#[test]
fn empty_job() {
    let f = job_file("[group]\nfamily = \"free_abelian\"\nrank = 2\n");
    let o = run(&["export", "--job", f.path().to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["results"], serde_json::json!([]));
}

#[test]
fn out_file_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("z.csv");
    let o = run(&[
        "ends",
        "--group",
        "abelian:1",
        "--nmax",
        "4",
        "--format",
        "csv",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let csv = std::fs::read_to_string(&out).unwrap();
    let rows: Vec<&str> = csv.lines().collect();
    assert_eq!(rows[0], "task_index,task,level,count");
    assert_eq!(
        &rows[1..],
        [
            "0,ends,0,2",
            "0,ends,1,2",
            "0,ends,2,2",
            "0,ends,3,2",
            "0,ends,4,2"
        ]
    );
}

#[test]
fn dot_export() {
    let o = run(&["export", "--group", "free:2", "--radius", "2"]);
    assert_eq!(code(&o), 0);
    let dot = String::from_utf8(o.stdout).unwrap();
    assert!(dot.starts_with("digraph \"F2\""));
    let nodes = dot.lines().filter(|l| l.contains("fillcolor")).count();
    let edges = dot.lines().filter(|l| l.contains("->")).count();
    assert_eq!((nodes, edges), (17, 16));

    let o = run(&[
        "export",
        "--group",
        "abelian:2",
        "--subgroup",
        "x",
        "--radius",
        "3",
        "--level",
        "1",
    ]);
    let dot = String::from_utf8(o.stdout).unwrap();
    assert_eq!(dot.lines().filter(|l| l.contains("fillcolor")).count(), 7);
    assert_eq!(dot.lines().filter(|l| l.contains("penwidth=3")).count(), 4);

    // Without an export task there is nothing to draw.
    assert_eq!(
        code(&run(&["ends", "--group", "abelian:1", "--format", "dot"])),
        64
    );
}

#[test]
fn shipped_jobs_run() {
    let mut seen = 0;
    for entry in std::fs::read_dir(jobs_dir()).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "toml") {
            let o = run(&["export", "--job", path.to_str().unwrap(), "--no-timing"]);
            assert_eq!(
                code(&o),
                0,
                "{}: {}",
                path.display(),
                String::from_utf8_lossy(&o.stderr)
            );
            seen += 1;
        }
    }
    assert!(seen >= 3);
}

#[test]
fn subcommand_filters_job_tasks() {
    let job = jobs_dir().join("classical.toml");
    let o = run(&["pair-ends", "--job", job.to_str().unwrap()]);
    let v = json(&o);
    let results = v["results"].as_array().unwrap();
    assert_eq!(results.len(), 1);
    assert_eq!(results[0]["task"], "pair-ends");
    assert_eq!(results[0]["value"], 0);
    assert_eq!(results[0]["subgroup"], "even");
}
