use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use fracdiff_core::kernels::{fundamental_solution, KernelSpec, Route};

fn fracdiff(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fracdiff")).args(args).env_remove("FRACDIFF_THREADS").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// Rows of a CSV as name → column lookups.
fn table(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    (header, lines.map(|l| l.split(',').map(String::from).collect()).collect())
}

fn column(text: &str, name: &str) -> Vec<f64> {
    let (header, rows) = table(text);
    let i = header.iter().position(|h| h == name).unwrap();
    rows.iter().map(|r| r[i].parse().unwrap()).collect()
}

fn write_field(path: &Path, x0: f64, dx: f64, values: &[f64]) {
    let mut text = String::from("x,value\n");
    for (i, v) in values.iter().enumerate() {
        text.push_str(&format!("{:.16e},{v:.16e}\n", x0 + dx * i as f64));
    }
    fs::write(path, text).unwrap();
}

#[test]
fn gaussian_kernel_on_a_range() {
    let o = fracdiff(&["kernel", "--alpha", "2", "--beta", "1", "--x", "-5:5:101", "--route", "fourier"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.starts_with("x,t,alpha,beta,eta,route,value,err_est\n"));
    let values = column(&text, "value");
    assert_eq!(values.len(), 101);
    assert!((values[50] - 0.282_094_791_773_878_1).abs() < 1e-10);
    assert!(table(&text).1.iter().all(|r| r[5] == "fourier"));
}

#[test]
fn cauchy_kernel_at_the_origin() {
    let o = fracdiff(&["kernel", "--alpha", "1", "--beta", "1", "--x", "0"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v = column(&stdout(&o), "value")[0];
    assert!((v - std::f64::consts::FRAC_1_PI).abs() < 1e-12, "{v}");
}

#[test]
fn g2_and_asymptotics_commands() {
    let o = fracdiff(&["g2", "--alpha", "1.5", "--beta", "1.5", "--x", "0.5,1,2", "--t", "1,2"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(column(&stdout(&o), "value").len(), 6);

    let o = fracdiff(&["asymptotics", "--alpha", "1.5", "--beta", "1", "--x", "0,50"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let (header, rows) = table(&stdout(&o));
    assert_eq!(header, ["x", "t", "alpha", "beta", "eta", "value", "small_x", "large_x"]);
    // no algebraic tail at the origin; the far point is close to it
    assert_eq!(rows[0][7], "");
    let (value, large): (f64, f64) = (rows[1][5].parse().unwrap(), rows[1][7].parse().unwrap());
    assert!((value - large).abs() < 0.02 * value, "{value} vs {large}");
    assert!(stderr(&o).contains("large |x|"));
}

#[test]
fn empty_and_malformed_ranges_are_usage_errors() {
    assert_eq!(fracdiff(&["kernel", "--alpha", "2", "--beta", "1", "--x", "0:1:0"]).status.code(), Some(2));
    assert_eq!(fracdiff(&["kernel", "--alpha", "2", "--beta", "1"]).status.code(), Some(2));
    assert_eq!(fracdiff(&["kernel", "--alpha", "2.5", "--beta", "1", "--x", "0"]).status.code(), Some(2));
    assert_eq!(fracdiff(&["kernel", "--alpha", "2", "--beta", "1", "--x", "0", "--route", "magic"]).status.code(), Some(2));
}

#[test]
fn solving_with_point_data_reproduces_the_kernel() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("delta.csv");
    let (x0, dx, n) = (-12.8, 0.05, 512);
    let mut values = vec![0.0; n];
    values[256] = 1.0 / dx;
    write_field(&input, x0, dx, &values);
    let o =
        fracdiff(&["solve", "--alpha", "1.5", "--beta", "1", "--t", "1", "--input", input.to_str().unwrap(), "--nk", "8192", "--tol", "1"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.starts_with("x,N\n"));
    let (xs, u) = (column(&text, "x"), column(&text, "N"));
    let spec = KernelSpec::new(1.5, 1.0, 1.0).unwrap();
    let mut worst: f64 = 0.0;
    for (&x, &v) in xs.iter().zip(&u) {
        if x.abs() <= 5.0 {
            worst = worst.max((v - fundamental_solution(&spec, x, 1.0, Route::Fourier).unwrap().value).abs());
        }
    }
    assert!(worst < 1e-6, "{worst}");
}

#[test]
fn heat_flow_of_a_gaussian() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("gauss.csv");
    let (x0, dx, n) = (-10.0, 0.05, 401);
    let values: Vec<f64> = (0..n).map(|i| (-(x0 + dx * i as f64).powi(2)).exp()).collect();
    write_field(&input, x0, dx, &values);
    let out = dir.path().join("u.csv");
    let o = fracdiff(&[
        "solve",
        "--alpha",
        "2",
        "--beta",
        "1",
        "--t",
        "0.5",
        "--input",
        input.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = fs::read_to_string(out).unwrap();
    let (xs, u) = (column(&text, "x"), column(&text, "N"));
    assert_eq!(u.len(), n);
    let s = 1.0 + 4.0 * 0.5;
    let worst = xs.iter().zip(&u).map(|(&x, &v)| (v - (-x * x / s).exp() / s.sqrt()).abs()).fold(0.0, f64::max);
    assert!(worst < 1e-8, "{worst}");
}

#[test]
fn malformed_input_names_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("bad.csv");
    fs::write(&input, "x,value\n0,0\n0.1,zero\n0.2,0\n").unwrap();
    let o = fracdiff(&["solve", "--alpha", "2", "--beta", "1", "--input", input.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
}

#[test]
fn data_touching_the_boundary_is_a_grid_error() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("flat.csv");
    write_field(&input, -1.0, 0.1, &[1.0; 21]);
    let o = fracdiff(&["solve", "--alpha", "2", "--beta", "1", "--input", input.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4), "{}", stderr(&o));
}

#[test]
fn validate_one_suite_and_reject_unknown_ones() {
    let o = fracdiff(&["validate", "--suite", "mittag-leffler"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("[4] PASS mittag-leffler"));
    assert_eq!(fracdiff(&["validate", "--suite", "nosuch"]).status.code(), Some(2));
}

#[test]
fn moments_and_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let o = fracdiff(&[
        "moments",
        "--alpha",
        "1.5",
        "--beta",
        "0.8",
        "--delta",
        "0.2:1.2:3",
        "--t",
        "1,2",
        "--report",
        report.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let diffs = column(&stdout(&o), "rel_diff");
    assert_eq!(diffs.len(), 6);
    assert!(diffs.iter().all(|&d| d < 1e-5));
    let json: serde_json::Value = serde_json::from_str(&fs::read_to_string(report).unwrap()).unwrap();
    assert_eq!(json["command"], "moments");
    assert_eq!(json["rows_written"], 6);
    assert_eq!(json["spec"]["alpha"], 1.5);
    assert!(json["max_cross_route_discrepancy"].as_f64().unwrap() < 1e-5);
    assert!(json["wall_time"].as_f64().unwrap() >= 0.0);

    // δ ≥ α has no finite moment
    assert_eq!(fracdiff(&["moments", "--alpha", "1.5", "--beta", "0.8", "--delta", "1.6"]).status.code(), Some(2));
}

#[test]
fn config_file_fills_missing_flags() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("run.toml");
    fs::write(&config, "alpha = 2.0\nbeta = 1.0\nx = \"0:1:3\"\nt = 2.0\n").unwrap();
    let o = fracdiff(&["kernel", "--config", config.to_str().unwrap(), "--x", "0"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert_eq!(column(&text, "x"), vec![0.0]);
    assert_eq!(column(&text, "t"), vec![2.0]);
    fs::write(&config, "alpha = 2.0\nbogus = 1\n").unwrap();
    assert_eq!(fracdiff(&["kernel", "--config", config.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn output_is_identical_across_thread_counts() {
    let args = ["kernel", "--alpha", "1.3", "--beta", "0.7", "--x", "-4:4:41", "--t", "0.5,1,3"];
    let one = fracdiff(&[&args[..], &["--threads", "1"]].concat());
    let four = fracdiff(&[&args[..], &["--threads", "4"]].concat());
    assert!(one.status.success() && four.status.success());
    assert_eq!(one.stdout, four.stdout);

    let env = Command::new(env!("CARGO_BIN_EXE_fracdiff")).args(args).env("FRACDIFF_THREADS", "3").output().unwrap();
    assert_eq!(env.stdout, one.stdout);
    let bad = Command::new(env!("CARGO_BIN_EXE_fracdiff")).args(args).env("FRACDIFF_THREADS", "many").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert_eq!(fracdiff(&[&args[..], &["--threads", "0"]].concat()).status.code(), Some(2));
}
