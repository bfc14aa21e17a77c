use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flipped-toeplitz"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["pairing", "-s", "2 + cos(t)", "--n", "4,8"]).status.code(), Some(0));
    assert_eq!(run(&["coeffs", "-s", "1 +"]).status.code(), Some(2));
    assert_eq!(run(&["pairing", "-s", "1", "--n", "8,4"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    // T_15(2cos t) is singular and a generic right-hand side is inconsistent.
    assert_eq!(run(&["minres", "-s", "2*cos(t)", "--n", "15"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn output_is_deterministic() {
    let args = ["analyze", "--preset", "e2.5", "--n", "16,32", "--exact-grid", "--minres"];
    let a = run(&["pairing", "--preset", "e3", "--n", "12,40"]);
    let b = run(&["pairing", "--preset", "e3", "--n", "12,40", "--sequential"]);
    assert_eq!(a.stdout, b.stdout);

    let d1 = tempfile::tempdir().unwrap();
    let d2 = tempfile::tempdir().unwrap();
    for d in [&d1, &d2] {
        let mut full = args.to_vec();
        full.extend(["--out", d.path().to_str().unwrap()]);
        assert_eq!(run(&full).status.code(), Some(0));
    }
    let read = |dir: &Path, name: &str| std::fs::read(dir.join(name)).unwrap();
    for name in ["localize_16.json", "pairing_32.csv", "dist_32.csv", "exact_grid_16.csv", "minres_32.csv"] {
        assert_eq!(read(d1.path(), name), read(d2.path(), name), "{name}");
    }
    assert!(!std::fs::read_dir(d1.path()).unwrap().any(|e| {
        e.unwrap().file_name().to_string_lossy().ends_with(".partial")
    }));
}

#[test]
fn pairing_csv_layout() {
    let o = run(&["pairing", "-s", "2*cos(t)", "--n", "3"]);
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("n,i,lamT,lamH,class"));
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().any(|r| r.ends_with("symmetric")) && rows.iter().any(|r| r.ends_with("skew")));
}

#[test]
fn json_format_parses() {
    let o = run(&["match", "--preset", "e2", "--n", "8,16", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 8 + 16);
    assert!(rows.iter().all(|r| r["deviation"].as_f64().unwrap() >= 0.0));
}

#[test]
fn reproduce_table_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t1.csv");
    let o = run(&["reproduce", "table1", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(path).unwrap();
    assert_eq!(text.lines().count(), 9);
}
