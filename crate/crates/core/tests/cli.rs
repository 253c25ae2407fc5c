use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn arrow3(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_arrow3"))
        .args(args)
        .output()
        .expect("spawn arrow3")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn solve_prints_values_and_vectors() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("m.txt");
    fs::write(&input, "# comment\n2 1 0 2 1 2\n\n3 0 0 2 0 1\n").unwrap();
    let out = arrow3(&["solve", "--in", path(&input)]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 8);
    assert!(lines[0].starts_with("lambda "));
    assert!(lines[1..4]
        .iter()
        .all(|l| l.starts_with("v ") && l.split_whitespace().count() == 4));

    let vals: Vec<f64> = lines[0]
        .split_whitespace()
        .skip(1)
        .map(|t| t.parse().unwrap())
        .collect();
    let r2 = 2f64.sqrt();
    for (got, want) in vals.iter().zip([2.0 + r2, 2.0, 2.0 - r2]) {
        assert!((got - want).abs() < 1e-14, "{got} vs {want}");
    }
    assert_eq!(lines[4], "lambda 3e0 2e0 1e0");
}

#[test]
fn newton_method_flag_is_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("m.txt");
    fs::write(&input, "1 2 3 4 5 6\n").unwrap();
    let out = arrow3(&["solve", "--in", path(&input), "--method", "newton"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(arrow3(&[]).status.code(), Some(1));
    assert_eq!(
        arrow3(&["bench", "--dist", "cauchy", "--out", "x.csv"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        arrow3(&["solve", "--in", "m.txt", "--method", "halley"])
            .status
            .code(),
        Some(1)
    );

    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("bad.txt");
    fs::write(&input, "1 2 3\n").unwrap();
    let out = arrow3(&["solve", "--in", path(&input)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));

    fs::write(&input, "1 2 3 4 5 nan\n").unwrap();
    assert_eq!(
        arrow3(&["solve", "--in", path(&input)]).status.code(),
        Some(1)
    );

    let csv = dir.path().join("b.csv");
    assert_eq!(
        arrow3(&["bench", "--dist", "normal", "--n", "0", "--out", path(&csv)])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        arrow3(&["solve", "--in", path(&input), "--c-term=-1"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        arrow3(&["solve", "--in", path(&input), "--c-deflate", "0"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn io_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.txt");
    assert_eq!(
        arrow3(&["solve", "--in", path(&missing)]).status.code(),
        Some(2)
    );
    assert_eq!(
        arrow3(&["diff", "--in", path(&missing), "--out", "x"])
            .status
            .code(),
        Some(2)
    );

    let garbage = dir.path().join("garbage.csv");
    fs::write(&garbage, "index,dist\nnot,a,record\n").unwrap();
    let out = dir.path().join("d");
    assert_eq!(
        arrow3(&["diff", "--in", path(&garbage), "--out", path(&out)])
            .status
            .code(),
        Some(2)
    );

    let unwritable = dir.path().join("no/such/dir/out.csv");
    assert_eq!(
        arrow3(&[
            "bench",
            "--dist",
            "uniform",
            "--n",
            "5",
            "--out",
            path(&unwritable)
        ])
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn solver_fault_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("m.txt");
    fs::write(&input, "1 0 0 1 0 1\n2 1 0 2 1 2\n").unwrap();
    let out = arrow3(&["solve", "--in", path(&input), "--max-iter", "0"]);
    assert_eq!(
        out.status.code(),
        Some(3),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let csv = dir.path().join("b.csv");
    let out = arrow3(&[
        "bench",
        "--dist",
        "normal",
        "--n",
        "10",
        "--max-iter",
        "0",
        "--out",
        path(&csv),
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn bench_then_diff() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("bench.csv");
    let out = arrow3(&[
        "bench",
        "--dist",
        "chisq",
        "--n",
        "200",
        "--seed",
        "7",
        "--out",
        path(&csv),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = fs::read_to_string(&csv).unwrap();
    assert_eq!(
        text.lines().next(),
        Some("index,dist,orth_main,resid_main,orth_base,resid_base")
    );
    assert_eq!(text.lines().count(), 201);

    let prefix = dir.path().join("cmp");
    assert_eq!(
        arrow3(&["diff", "--in", path(&csv), "--out", path(&prefix)])
            .status
            .code(),
        Some(0)
    );
    for suffix in ["orth", "resid"] {
        let series = fs::read_to_string(dir.path().join(format!("cmp.{suffix}.csv"))).unwrap();
        let mut lines = series.lines();
        assert_eq!(lines.next(), Some("rank,delta"));
        let deltas: Vec<f64> = lines
            .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
            .collect();
        assert_eq!(deltas.len(), 200);
        assert!(deltas.windows(2).all(|w| w[0] <= w[1]));
    }
}
