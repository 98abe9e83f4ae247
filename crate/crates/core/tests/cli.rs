use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

struct Fixture {
    dir: TempDir,
}

impl Fixture {
    fn new() -> Self {
        let dir = tempfile::tempdir().unwrap();
        let f = Fixture { dir };
        f.write("a1.json", r#"{"vertices": 1, "arrows": []}"#);
        f.write("a2.json", r#"{"vertices": 2, "arrows": [[0, 1]]}"#);
        f.write("a1a1.json", r#"{"vertices": 2, "arrows": []}"#);
        f.write("loop.json", r#"{"vertices": 1, "arrows": [[0, 0]]}"#);
        f.write("twist1.json", r#"{"T": [[-1]]}"#);
        f
    }

    fn write(&self, name: &str, text: &str) -> PathBuf {
        let p = self.dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        p
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn run(&self, quiver: &str, args: &[&str]) -> Output {
        Command::new(env!("CARGO_BIN_EXE_deltahall"))
            .arg("--quiver")
            .arg(self.path(quiver))
            .args(args)
            .output()
            .unwrap()
    }
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

fn has_row(rows: &Value, a: u64, b: u64, m: u64, coeff: (&str, &str)) -> bool {
    rows.as_array().unwrap().iter().any(|r| {
        r["a"] == a && r["b"] == b && r["m"] == m && r["coeff"]["a"] == coeff.0 && r["coeff"]["b"] == coeff.1
    })
}

#[test]
fn catalog_export() {
    let f = Fixture::new();
    let o = f.run("a2.json", &["--q", "2", "--max-dim", "2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["classes"].as_array().unwrap().len(), 7);
    assert!(String::from_utf8_lossy(&o.stderr).contains("7 classes"));
}

#[test]
fn delta_and_hall_tables() {
    let f = Fixture::new();
    let o = f.run("a1.json", &["--q", "2", "--max-dim", "2", "--table", "delta"]);
    assert_eq!(code(&o), 0);
    assert!(has_row(&json(&o), 1, 1, 2, ("0/1", "1/4")));
    assert!(has_row(&json(&o), 1, 1, 0, ("0/1", "1/1")));

    let o = f.run("a2.json", &["--q", "2", "--max-dim", "2", "--table", "hall"]);
    assert_eq!(code(&o), 0);
    // S1 = class 2, S2 = class 1, P1 = class 5
    assert!(has_row(&json(&o), 2, 1, 5, ("1/1", "0/1")));

    let o = f.run("a2.json", &["--q", "2", "--max-dim", "0", "--table", "delta"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o).as_array().unwrap().len(), 1);
}

#[test]
fn semi_derived_table_is_rational() {
    let f = Fixture::new();
    let o = f.run("a1.json", &["--q", "2", "--max-dim", "2", "--table", "twisted"]);
    assert_eq!(code(&o), 0);
    let rows = json(&o);
    for r in rows.as_array().unwrap() {
        assert_eq!(r["coeff"]["b"], "0/1", "{r}");
    }
    let square = rows.as_array().unwrap().iter().filter(|r| r["a"] == 1 && r["b"] == 1).count();
    assert_eq!(square, 2);
    let explicit = f.run(
        "a1.json",
        &["--q", "2", "--max-dim", "2", "--table", "twisted", "--twist", f.path("twist1.json").to_str().unwrap()],
    );
    assert_eq!(explicit.stdout, o.stdout);
}

#[test]
fn checks_pass_with_exit_zero() {
    let f = Fixture::new();
    for (quiver, q, d, suite) in
        [("a2.json", "2", "2", "green"), ("a1.json", "3", "3", "assoc"), ("a1a1.json", "2", "2", "commute")]
    {
        let o = f.run(quiver, &["--q", q, "--max-dim", d, "--check", suite]);
        assert_eq!(code(&o), 0, "{suite}: {}", String::from_utf8_lossy(&o.stderr));
        assert_eq!(json(&o)["passed"], true);
    }
}

#[test]
fn configuration_errors_exit_two() {
    let f = Fixture::new();
    let cases: Vec<(&str, Vec<&str>)> = vec![
        ("a1.json", vec!["--q", "4", "--max-dim", "2"]),
        ("loop.json", vec!["--q", "2", "--max-dim", "2"]),
        ("missing.json", vec!["--q", "2", "--max-dim", "2"]),
        ("a2.json", vec!["--q", "2", "--max-dim", "2", "--check", "rank2"]),
        ("a2.json", vec!["--q", "2", "--max-dim", "2", "--check", "bogus"]),
        ("a2.json", vec!["--q", "2", "--max-dim", "2", "--table", "bogus"]),
        ("a2.json", vec!["--q", "2", "--max-dim", "3", "--cap-matrices", "2"]),
        ("a2.json", vec!["--q", "2", "--max-dim", "2", "--jobs", "0"]),
        ("a2.json", vec!["--q", "2", "--max-dim", "2", "--check", "green", "--table", "hall"]),
    ];
    for (quiver, args) in cases {
        let o = f.run(quiver, &args);
        assert_eq!(code(&o), 2, "{quiver} {args:?}");
        assert!(o.stdout.is_empty());
    }
    let twist = f.path("twist1.json");
    let o = f.run("a2.json", &["--q", "2", "--max-dim", "2", "--table", "twisted", "--twist", twist.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
}

#[test]
fn output_is_identical_across_worker_counts() {
    let f = Fixture::new();
    let run = |jobs: &str, extra: &[&str]| {
        let mut args = vec!["--q", "3", "--max-dim", "3", "--jobs", jobs];
        args.extend_from_slice(extra);
        let o = f.run("a2.json", &args);
        assert_eq!(code(&o), 0);
        o.stdout
    };
    for extra in [&["--table", "delta"][..], &["--table", "ext"], &["--check", "assoc"], &["--check", "rank2"]] {
        assert_eq!(run("1", extra), run("4", extra), "{extra:?}");
    }
}

#[test]
fn out_flag_writes_file() {
    let f = Fixture::new();
    let target = f.path("table.json");
    let o = f.run("a1.json", &["--q", "2", "--max-dim", "2", "--table", "derived", "--out", target.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let rows: Value = serde_json::from_str(&std::fs::read_to_string(Path::new(&target)).unwrap()).unwrap();
    // u_S * u_S has G = F-hat a_M / (a_S a_S) = v^-3 * 6 at M = S^2
    assert!(has_row(&rows, 1, 1, 2, ("0/1", "3/2")));
}
