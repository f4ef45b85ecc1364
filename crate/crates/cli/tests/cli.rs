use compqd::qdtable::{build, Algorithm, Init, QdTable};
use compqd::SeriesInput;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_compqd")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn table_json_round_trips_bitwise() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("coeffs.txt");
    std::fs::write(&path, "# exp, first terms\n1\n1\n1/2\n1/6\n1/24\n1/120\n1/720\n").unwrap();
    let json = dir.path().join("table.json");
    let o = run(&["table", "--file", path.to_str().unwrap(), "--algorithm", "compqd", "-o", json.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let read: QdTable = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    let s = SeriesInput::from_exact(compqd::io::parse_coefficients(&std::fs::read_to_string(&path).unwrap()).unwrap())
        .unwrap();
    assert!(read.bit_eq(&build(&s, Algorithm::Compqd, Init::Real).unwrap()));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "1\n2\nthree\n").unwrap();
    let o = run(&["table", "--file", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));

    assert_eq!(code(&run(&["flops", "--range", "5:1:4"])), 2);
    assert_eq!(code(&run(&["table", "--gen", "nope:3"])), 2);
    assert_eq!(code(&run(&["zeros", "--gen", "laguerre:5", "--tol", "0"])), 2);

    let zero = dir.path().join("zero.txt");
    std::fs::write(&zero, "0\n1\n2\n").unwrap();
    assert_eq!(code(&run(&["table", "--file", zero.to_str().unwrap()])), 3);

    let o = run(&["zeros", "--gen", "laguerre:35", "--variant", "proqd", "--max-sweeps", "5"]);
    assert_eq!(code(&o), 4);
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["converged"], false);
}

#[test]
fn zeros_of_a_small_laguerre_polynomial() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("z.csv");
    let o = run(&["zeros", "--gen", "laguerre:8", "--max-sweeps", "200", "--csv", csv.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let errs = report["rel_err"].as_array().unwrap();
    assert_eq!(errs.len(), 8);
    assert!(errs.iter().all(|e| e.as_f64().unwrap() <= 1e-14), "{errs:?}");
    assert_eq!(std::fs::read_to_string(csv).unwrap().lines().count(), 9);
}

#[test]
fn flops_rows_and_means() {
    let text = stdout(&run(&["flops", "--range", "1:1:1"]));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "m,target,qd,compqd,ddqd,compqd_over_qd,ddqd_over_qd");
    assert!(lines[1].starts_with("1,e,4,219,240,"), "{}", lines[1]);
    assert!(lines.iter().any(|l| l.starts_with("mean,q,")));
}

#[test]
fn sweep_rows_do_not_depend_on_range_or_threads() {
    let a = stdout(&run(&["sweep", "--range", "10:5:30", "--seed", "7"]));
    let b = Command::new(env!("CARGO_BIN_EXE_compqd"))
        .args(["sweep", "--range", "20:10:30", "--seed", "7", "--format", "hex"])
        .env("QD_THREADS", "1")
        .output()
        .unwrap();
    let c = stdout(&run(&["sweep", "--range", "20:10:30", "--seed", "7", "--format", "hex"]));
    assert_eq!(stdout(&b), c);
    let row = |t: &str, d: &str| t.lines().find(|l| l.starts_with(&format!("{d},"))).unwrap().to_string();
    assert_eq!(row(&a, "20").split(',').nth(1), row(&c, "20").split(',').nth(1));
    let parse = |s: &str| compqd::bigreal::parse_hex_float(s).unwrap();
    let hex: Vec<f64> = row(&c, "30").split(',').skip(2).map(parse).collect();
    let dec: Vec<f64> = row(&a, "30").split(',').skip(2).map(|s| s.parse().unwrap()).collect();
    assert_eq!(hex, dec);
}

#[test]
fn bad_thread_count_is_a_usage_error() {
    let o = Command::new(env!("CARGO_BIN_EXE_compqd")).args(["flops", "--range", "1:1:1"]).env("QD_THREADS", "x").output().unwrap();
    assert_eq!(code(&o), 2);
}

#[test]
fn poles_and_cfrac_emit_json() {
    let o = run(&["poles", "--gen", "exp_over_poly:1,2,3,4:23", "--columns", "1,2"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let p1 = v["poles"][0]["value"].as_f64().unwrap();
    // Geometric convergence at ratio 1/2 leaves about 2^-21 at this depth.
    assert!((p1 - 1.0).abs() < 1e-6, "{p1}");
    assert_eq!(v["poles"][0]["converged"], true);

    let o = run(&["cfrac", "--gen", "exp:6", "--algorithm", "exact"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let a: Vec<f64> = v["coeffs"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect();
    assert_eq!(&a[..3], &[1.0, 1.0, -0.5]);
}
