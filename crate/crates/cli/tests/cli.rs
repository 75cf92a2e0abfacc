use std::fs;
use std::path::Path;

use parhyp_cli::run_with;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("parhyp").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn write_problem(
    dir: &Path,
    name: &str,
    a: f64,
    b: f64,
    phi0: &str,
    phi1: &str,
    psi: &str,
) -> String {
    let path = dir.join(name);
    let text =
        format!(r#"{{"a": {a}, "b": {b}, "phi0": "{phi0}", "phi1": "{phi1}", "psi": "{psi}"}}"#);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn equal_coefficients_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_problem(dir.path(), "p.json", 1.0, 1.0, "0", "0", "0");
    let (code, _, err) = run(&["solve", &p]);
    assert_eq!(code, 1);
    assert!(err.contains("a != b"), "{err}");
}

#[test]
fn solve_prints_trace_table() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_problem(dir.path(), "p.json", 2.0, -1.0, "1 - y", "y", "4*x");
    let (code, out, _) = run(&["solve", &p, "--samples", "5"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "x,tau,nu");
    assert_eq!(lines.len(), 6);
    assert!(lines[1].starts_with("0,1.000000000000000"));
}

#[test]
fn homogeneous_grid_is_zero() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_problem(dir.path(), "p.json", 2.0, -1.0, "0", "0", "0");
    let (code, out, _) = run(&["eval", &p, "--nx", "11", "--ny-top", "5", "--ny-bot", "5"]);
    assert_eq!(code, 0);
    let mut rows = 0;
    for line in out.lines().skip(1) {
        let u: f64 = line.rsplit(',').next().unwrap().parse().unwrap();
        assert!(u.abs() <= 1e-12);
        rows += 1;
    }
    assert!(rows > 50);
}

#[test]
fn eval_rows_are_ordered_and_skip_the_thin_strip() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_problem(dir.path(), "p.json", 2.0, -1.0, "1 - y", "y", "4*x");
    let (code, out, _) = run(&[
        "eval",
        &p,
        "--nx",
        "5",
        "--ny-top",
        "4",
        "--ny-bot",
        "2",
        "--n-terms",
        "100",
    ]);
    assert_eq!(code, 0);
    let pts: Vec<(f64, f64)> = out
        .lines()
        .skip(1)
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[0].parse().unwrap(), f[1].parse().unwrap())
        })
        .collect();
    for w in pts.windows(2) {
        assert!(w[0].1 > w[1].1 || (w[0].1 == w[1].1 && w[0].0 < w[1].0));
    }
    assert!(pts.iter().all(|&(_, y)| y <= 0.0 || y >= 1e-3));
    assert_eq!(pts.last().unwrap(), &(0.5, -0.5));
}

#[test]
fn vertex_row_of_the_example() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _, _) = run(&["example", "--force", "-o", dir.path().to_str().unwrap()]);
    assert_eq!(code, 0);
    let csv = fs::read_to_string(dir.path().join("example.csv")).unwrap();
    let row = csv.lines().find(|l| l.starts_with("0.5,-0.5,")).unwrap();
    let f: Vec<&str> = row.split(',').collect();
    assert_eq!(f[2], "hyperbolic_boundary");
    assert!((f[3].parse::<f64>().unwrap() - 1.0).abs() <= 1e-9);
    assert!(fs::read_to_string(dir.path().join("example.svg"))
        .unwrap()
        .starts_with("<svg"));
}

#[test]
fn example_without_force_is_rejected() {
    let (code, _, err) = run(&["example"]);
    assert_eq!(code, 1);
    assert!(err.contains("--force"));
}

#[test]
fn verify_exit_code_follows_report() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    assert_eq!(run(&["example", "--printed", "-o", d]).0, 0);
    let file = dir.path().join("example.json");
    let file = file.to_str().unwrap();
    let (code, out, _) = run(&["verify", file, "--n-interior", "16"]);
    let report: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(report["passed"], true);
    assert_eq!(code, 0);

    // ψ = x leaves a constant gluing defect
    assert_eq!(run(&["example", "--force", "-o", d]).0, 0);
    assert_eq!(run(&["verify", file, "--n-interior", "16"]).0, 1);
    let (code, out, err) = run(&["verify", file, "--force", "--n-interior", "16"]);
    let report: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(report["passed"], false);
    assert_eq!(code, 1);
    assert!(err.contains("gluing"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&[]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["eval", "p.json", "--nx", "many"]).0, 2);
    assert_eq!(run(&["render", "p.json"]).0, 2);
    assert_eq!(run(&["solve", "/definitely/not/here.json"]).0, 2);
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("verify"));
}

#[test]
fn bad_problem_files_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_problem(dir.path(), "p.json", 2.0, -1.0, "1 - ", "y", "4*x");
    let (code, _, err) = run(&["solve", &p]);
    assert_eq!(code, 1);
    assert!(err.contains("phi0"), "{err}");
    let junk = dir.path().join("junk.json");
    fs::write(&junk, "{\"a\": 1}").unwrap();
    assert_eq!(run(&["solve", junk.to_str().unwrap()]).0, 1);
}

#[test]
fn evaluator_failures_exit_three() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_problem(dir.path(), "p.json", 2.0, -1.0, "0", "0", "log(x)");
    let (code, _, err) = run(&["solve", &p]);
    assert_eq!(code, 3, "{err}");
}

#[test]
fn unwritable_output_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_problem(dir.path(), "p.json", 2.0, -1.0, "0", "0", "0");
    let target = dir.path().join("missing").join("out.svg");
    let (code, _, _) = run(&[
        "render",
        &p,
        "--nx",
        "5",
        "--ny-top",
        "2",
        "--ny-bot",
        "2",
        "-o",
        target.to_str().unwrap(),
    ]);
    assert_eq!(code, 2);
}

#[test]
fn render_writes_deterministic_svg() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_problem(dir.path(), "p.json", 2.0, -1.0, "1 - y", "y", "4*x");
    let a = dir.path().join("a.svg");
    let b = dir.path().join("b.svg");
    for f in [&a, &b] {
        let code = run(&[
            "render",
            &p,
            "--nx",
            "21",
            "--ny-top",
            "10",
            "--ny-bot",
            "10",
            "-o",
            f.to_str().unwrap(),
        ])
        .0;
        assert_eq!(code, 0);
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}
