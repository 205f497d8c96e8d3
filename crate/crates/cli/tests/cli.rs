use std::path::Path;
use std::process::{Command, Output};

fn xlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_xlab")).args(args).output().expect("binary runs")
}

fn body_without_header(path: &Path) -> String {
    let text = std::fs::read_to_string(path).unwrap();
    assert!(text.starts_with("# xlab "));
    text.split_once('\n').unwrap().1.to_string()
}

fn csv_rows(path: &Path) -> Vec<Vec<String>> {
    body_without_header(path)
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn lebesgue_table_writes_one_row_per_n() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("l.csv");
    let o = xlab(&["lebesgue-table", "method=dirichlet", "nmin=1", "nmax=64", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let body = body_without_header(&out);
    assert_eq!(body.lines().next().unwrap(), "method,n,value,quad_error");
    let rows = csv_rows(&out);
    assert_eq!(rows.len(), 64);
    // L_1 = 1/3 + 2√3/π
    let l1: f64 = rows[0][2].parse().unwrap();
    assert!((l1 - (1.0 / 3.0 + 2.0 * 3f64.sqrt() / std::f64::consts::PI)).abs() < 1e-9);
}

#[test]
fn reruns_are_byte_identical_below_the_header() {
    let dir = tempfile::tempdir().unwrap();
    for (exp, args) in [
        ("schoenberg", vec!["m=3", "p=inf", "trials=200"]),
        ("comparison-ratio", vec!["m=512", "nmax=16"]),
        ("posdef-report", vec!["sets=50", "witness_trials=100", "step=0.5"]),
    ] {
        let paths: Vec<_> = (0..2).map(|i| dir.path().join(format!("{exp}{i}"))).collect();
        for p in &paths {
            let mut a = vec![exp];
            a.extend(&args);
            a.extend(["--seed", "5", "--out", p.to_str().unwrap()]);
            assert_eq!(xlab(&a).status.code(), Some(0), "{exp}");
        }
        let (x, y) = (std::fs::read_to_string(&paths[0]).unwrap(), std::fs::read_to_string(&paths[1]).unwrap());
        if exp == "posdef-report" {
            assert_eq!(x, y);
        } else {
            assert_eq!(body_without_header(&paths[0]), body_without_header(&paths[1]));
        }
    }
}

#[test]
fn thread_count_does_not_change_rows() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    for (p, threads) in [(&a, "1"), (&b, "3")] {
        let o = Command::new(env!("CARGO_BIN_EXE_xlab"))
            .args(["moduli", "m=1024", "nmax=16", "--out", p.to_str().unwrap()])
            .env("XLAB_THREADS", threads)
            .output()
            .unwrap();
        assert_eq!(o.status.code(), Some(0));
    }
    assert_eq!(body_without_header(&a), body_without_header(&b));
}

#[test]
fn duality_fuzz_passes_exhaustively() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("d.csv");
    let o = xlab(&["duality-fuzz", "maxlen=6", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let rows = csv_rows(&out);
    assert_eq!(rows.len(), 6);
    assert_eq!(rows[5][1], "15625");
    assert!(rows.iter().all(|r| r[4] == "true"));
}

#[test]
fn disc_zeros_sit_in_the_width_bracket() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("z.csv");
    let o = xlab(&["indicator-zeros", "body=disc", "p=3", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(body_without_header(&out).lines().next().unwrap(), "phi,r_p,d_phi,product,lower,upper");
    for r in csv_rows(&out) {
        let v: Vec<f64> = r.iter().map(|c| c.parse().unwrap()).collect();
        assert!(v[4] < v[3] && v[3] < v[5]);
        assert!((v[4] - 6.0 * std::f64::consts::PI).abs() < 1e-12);
    }
}

#[test]
fn json_mirrors_rows() {
    let o = xlab(&["aspline", "n=2", "step=0.5", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = v["rows"].as_array().unwrap();
    // (1 - t)^3 (1 + 3t) = 1 - 6t^2 + 8t^3 - 3t^4
    let expect = [1.0, 0.0, -6.0, 8.0, -3.0];
    assert_eq!(rows.len(), expect.len());
    for (r, e) in rows.iter().zip(expect) {
        assert!((r["coefficient"].as_f64().unwrap() - e).abs() < 1e-10);
    }
    assert_eq!(v["meta"]["experiment"], "aspline");
    assert!(v["summary"]["transform_min"].as_f64().unwrap() > 0.0);
}

#[test]
fn config_file_and_hash() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    std::fs::write(&cfg, "# small table\nmethod = fejer\nnmax = 5\nseed = 3\n").unwrap();
    let out = dir.path().join("f.csv");
    let o = xlab(&["lebesgue-table", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.lines().next().unwrap().contains("seed=3"));
    let rows = csv_rows(&out);
    assert_eq!(rows.len(), 5);
    // Fejér kernels are nonnegative, so every constant is 1
    assert!(rows.iter().all(|r| r[0] == "fejer" && (r[2].parse::<f64>().unwrap() - 1.0).abs() < 1e-9));
}

#[test]
fn usage_errors_exit_with_2() {
    assert_eq!(xlab(&["no-such-experiment"]).status.code(), Some(2));
    assert_eq!(xlab(&["lebesgue-table", "bogus=1"]).status.code(), Some(2));
    assert_eq!(xlab(&["lebesgue-table", "nmax=abc"]).status.code(), Some(2));
    assert_eq!(xlab(&["lebesgue-table", "method=unknown"]).status.code(), Some(2));
    assert_eq!(xlab(&["lebesgue-table", "noequals"]).status.code(), Some(2));
    assert_eq!(xlab(&["lebesgue-table", "--format", "xml"]).status.code(), Some(2));
    assert_eq!(xlab(&["euler-maclaurin-check", "xs=0"]).status.code(), Some(2));
    assert_eq!(xlab(&[]).status.code(), Some(2));
}

#[test]
fn numerical_failures_exit_with_1() {
    let o = xlab(&["lebesgue-table", "nmax=2", "tol=1e-300"]);
    assert_eq!(o.status.code(), Some(1));
    let stdout = String::from_utf8(o.stdout).unwrap();
    // failed rows are still emitted, with empty values
    assert_eq!(stdout.lines().skip(2).collect::<Vec<_>>(), vec!["dirichlet,1,,", "dirichlet,2,,"]);
    assert!(String::from_utf8(o.stderr).unwrap().contains("convergence failure"));
}

#[test]
fn list_shows_the_registry() {
    let o = xlab(&["list"]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.lines().count() >= 14);
    assert!(text.lines().any(|l| l.starts_with("kolmogorov-fit") && l.contains("Kolmogorov")));
    assert!(text.lines().any(|l| l.starts_with("euler-maclaurin-check") && l.contains("Euler")));
}
