use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn subwindow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_subwindow")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

fn records(path: &Path) -> Vec<Value> {
    std::fs::read_to_string(path).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

/// Drops the fields that depend on the clock.
fn untimed(mut v: Value) -> Value {
    for k in ["wall_time_ns", "preprocess_ns", "search_ns"] {
        v.as_object_mut().unwrap().remove(k);
    }
    v
}

#[test]
fn solve_bentley_on_the_small_example() {
    let dir = tempfile::tempdir().unwrap();
    let csv = write(dir.path(), "m.csv", "1,-2\n-3,4\n");
    let o = subwindow(&["solve", &csv, "--alg", "bentley"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("rows[1,1] x cols[1,1]"), "{text}");
    assert!(text.lines().any(|l| l.split_whitespace().eq(["sum", "4"])), "{text}");
}

#[test]
fn unit_stride_output_equals_aess() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.csv");
    let p = path.to_str().unwrap();
    assert!(subwindow(&["gen", "--kind", "uniform_random", "--rows", "37", "--cols", "29", "--seed", "4", "--out", p])
        .status
        .success());
    let strip = |o: Output| {
        stdout(&o)
            .lines()
            .filter(|l| !l.starts_with("algorithm") && !l.starts_with("stride"))
            .collect::<Vec<_>>()
            .join("\n")
    };
    let a = strip(subwindow(&["solve", p, "--alg", "aess", "--trace"]));
    let s = strip(subwindow(&["solve", p, "--alg", "swss", "--stride", "unit", "--cap", "1000", "--trace"]));
    assert_eq!(a, s);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("nope.csv");
    assert_eq!(subwindow(&["solve", missing.to_str().unwrap()]).status.code(), Some(2));
    let bad = write(dir.path(), "bad.csv", "1,2\n3\n");
    let o = subwindow(&["solve", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    let ok = write(dir.path(), "ok.csv", "1\n");
    assert_eq!(subwindow(&["solve", &ok, "--alg", "fastest"]).status.code(), Some(64));
    assert_eq!(subwindow(&["solve", &ok, "--stride", "cube"]).status.code(), Some(64));
    assert_eq!(subwindow(&["solve", &ok, "--channel", "g"]).status.code(), Some(64));
    assert_eq!(subwindow(&["solve", &ok, "--gen", "uniform_random rows=2 cols=2"]).status.code(), Some(64));
    assert_eq!(subwindow(&["bench", &ok, "--repeats", "0"]).status.code(), Some(64));
    assert_eq!(subwindow(&["coherence", &ok, "--radius", "0"]).status.code(), Some(64));
    assert_eq!(subwindow(&[]).status.code(), Some(64));
    assert_eq!(subwindow(&["--help"]).status.code(), Some(0));
}

#[test]
fn bench_record_count_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.jsonl");
    let o = subwindow(&[
        "bench",
        "--gen",
        "coherent_blobs rows=256 cols=256",
        "--count",
        "10",
        "--alg",
        "aess,swss",
        "--stride",
        "sqrt",
        "--repeats",
        "3",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let recs = records(&out);
    assert_eq!(recs.len(), 60);
    assert!(recs.iter().all(|r| r["wall_time_ns"].as_u64().unwrap() > 0 && r["iou_vs_oracle"].is_null()));
    let summary = stdout(&o);
    assert!(summary.contains("summary swss[sqrt]") && summary.contains("median_speedup_vs_aess"), "{summary}");
    assert!(subwindow(&["verify", out.to_str().unwrap()]).status.success());
}

#[test]
fn bench_appends_and_reproduces_untimed_fields() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.jsonl");
    let args = [
        "bench",
        "--gen",
        "uniform_random rows=40 cols=30",
        "--count",
        "2",
        "--alg",
        "bentley,aess,swss",
        "--stride",
        "log,sqrt",
        "--repeats",
        "2",
        "--oracle",
        "--coherence",
        "--out",
        out.to_str().unwrap(),
    ];
    assert!(subwindow(&args).status.success());
    assert!(subwindow(&args).status.success());
    let recs = records(&out);
    assert_eq!(recs.len(), 2 * 2 * 4 * 2);
    let (first, second) = recs.split_at(recs.len() / 2);
    for (a, b) in first.iter().zip(second) {
        assert_eq!(untimed(a.clone()), untimed(b.clone()));
    }
    assert!(recs.iter().all(|r| r["iou_vs_oracle"].is_f64() && r["coherence"].is_f64()));
}

#[test]
fn single_cell_for_every_algorithm() {
    let dir = tempfile::tempdir().unwrap();
    let csv = write(dir.path(), "one.csv", "-2.5\n");
    let out = dir.path().join("r.csv");
    let o = subwindow(&[
        "bench",
        &csv,
        "--alg",
        "brute,bentley,aess,swss",
        "--repeats",
        "1",
        "--format",
        "csv",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let mut reader = csv::Reader::from_path(&out).unwrap();
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 4);
    for r in &rows {
        assert_eq!((10..14).map(|i| &r[i]).collect::<Vec<_>>(), ["0", "0", "0", "0"]);
        assert_eq!(&r[14], "-2.5");
    }
}

#[test]
fn verify_catches_edited_records() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.jsonl");
    assert!(subwindow(&[
        "bench",
        "--gen",
        "uniform_random rows=20 cols=20",
        "--repeats",
        "1",
        "--out",
        out.to_str().unwrap()
    ])
    .status
    .success());
    let text = std::fs::read_to_string(&out).unwrap();
    let mut recs: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    recs[0]["true_sum"] = Value::from(recs[0]["true_sum"].as_f64().unwrap() + 1.0);
    let edited: String = recs.iter().map(|r| format!("{r}\n")).collect();
    std::fs::write(&out, edited).unwrap();
    assert_eq!(subwindow(&["verify", out.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn oracle_size_limit_is_enforced() {
    let o = subwindow(&["bench", "--gen", "uniform_random rows=64 cols=64", "--oracle", "--oracle-limit", "32"]);
    assert_eq!(o.status.code(), Some(64));
    assert!(String::from_utf8_lossy(&o.stderr).contains("oracle refused"));
}

#[test]
fn coherence_and_gen_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.bin");
    let b = dir.path().join("b.bin");
    for p in [&a, &b] {
        assert!(subwindow(&["gen", "--rows", "50", "--cols", "40", "--seed", "8", "--out", p.to_str().unwrap()])
            .status
            .success());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let c = dir.path().join("const.csv");
    std::fs::write(&c, "3,3\n3,3\n").unwrap();
    assert_eq!(stdout(&subwindow(&["coherence", c.to_str().unwrap()])).trim(), "1");
}

#[test]
fn golden_suite_passes() {
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus/golden.toml");
    let o = subwindow(&["golden", "run", manifest.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("0 failed"));
}
