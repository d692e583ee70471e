//! End-to-end checks of the command-line surface: exit codes, config
//! handling, output formats and reproducibility.

use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_skewbessel")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn exponents_happy_path_and_rejection() {
    let ok = run(&["exponents", "--delta", "1", "--eta", "0", "--gamma", "1", "--c", "1"]);
    assert!(ok.status.success());
    let text = stdout(&ok);
    assert!(text.contains("theta"), "{text}");
    assert!(text.contains("0.2500000000000000"), "{text}");

    let bad = run(&["exponents", "--delta", "2.5"]);
    assert_eq!(bad.status.code(), Some(2));
    let err = String::from_utf8_lossy(&bad.stderr).into_owned();
    assert!(err.contains("delta") && err.contains("[1, 2)"), "{err}");
}

#[test]
fn density_is_normalized_and_symmetric() {
    let out = run(&["density", "--which", "exit-position-y0", "--z-points", "2001"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let rows: Vec<(f64, f64, f64)> = text
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with('z'))
        .map(|l| {
            let mut it = l.split(',');
            (
                it.next().unwrap().parse().unwrap(),
                it.next().unwrap().parse().unwrap(),
                it.next().unwrap().parse().unwrap(),
            )
        })
        .collect();
    assert_eq!(rows.len(), 2001);
    // trapezoid mass of the emitted pdf column
    let mut mass = 0.0;
    for w in rows.windows(2) {
        mass += 0.5 * (w[0].1 + w[1].1) * (w[1].0 - w[0].0);
    }
    assert!((mass - 1.0).abs() < 1e-4, "trapezoid mass {mass}");
    // cdf endpoint reaches the 1e-5 quantile target
    assert!(rows.last().unwrap().2 >= 0.9999);
    assert!(rows.first().unwrap().2 <= 1e-4);
    // symmetric parameters: even density
    let mid = rows.len() / 2;
    for k in 1..mid {
        let (zl, pl, _) = rows[mid - k];
        let (zr, pr, _) = rows[mid + k];
        assert!((zl + zr).abs() < 1e-9);
        assert!((pl - pr).abs() < 1e-8 * pl.max(1e-12), "asymmetry at {zl}");
    }
}

#[test]
fn sample_requires_seed() {
    let out = run(&["sample", "--which", "overshoot", "--n", "10"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("seed"));
}

#[test]
fn survival_rejects_degenerate_grid() {
    let out = run(&["survival", "--seed", "1", "--t-points", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn config_file_with_flag_override() {
    let dir = std::env::temp_dir();
    let cfg = dir.join("sb_cli_cfg.txt");
    std::fs::write(&cfg, "delta=1.5\neta=0.3\ngamma=1\nc=2\n").unwrap();
    let out = run(&["--config", cfg.to_str().unwrap(), "exponents"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("0.1564994627258039"));
    // flag wins over the file
    let out = run(&["--config", cfg.to_str().unwrap(), "--delta", "1", "--eta", "0", "--c", "1", "exponents"]);
    assert!(stdout(&out).contains("0.2500000000000000"));
}

#[test]
fn verify_reports_are_byte_identical_and_thread_independent() {
    let dir = std::env::temp_dir();
    let out1 = dir.join("sb_verify1.json");
    let out2 = dir.join("sb_verify2.json");
    let out3 = dir.join("sb_verify3.json");
    let base = [
        "verify",
        "--suite",
        "sampler",
        "--seed",
        "31415",
        "--replicas",
        "4000",
    ];
    let run1 = run(&[&base[..], &["--out", out1.to_str().unwrap()]].concat());
    assert!(run1.status.success(), "{}", String::from_utf8_lossy(&run1.stderr));
    let run2 = run(&[&base[..], &["--out", out2.to_str().unwrap()]].concat());
    assert!(run2.status.success());
    let run3 = run(&[&base[..], &["--threads", "1", "--out", out3.to_str().unwrap()]].concat());
    assert!(run3.status.success());
    let b1 = std::fs::read(&out1).unwrap();
    let b2 = std::fs::read(&out2).unwrap();
    let b3 = std::fs::read(&out3).unwrap();
    assert_eq!(b1, b2, "same seed must give byte-identical reports");
    assert_eq!(b1, b3, "worker count must not change any statistic");
}

#[test]
fn verify_exit_code_on_failure() {
    // deliberately coarse grid: the sigma_0 calibration check must fail,
    // and the command must exit 1 (not 2)
    let out = run(&[
        "verify",
        "--suite",
        "pathsim",
        "--seed",
        "7",
        "--replicas",
        "4000",
        "--dt",
        "0.01",
    ]);
    assert_eq!(out.status.code(), Some(1), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("\"pass\": false"), "{text}");
    assert!(text.contains("pathsim_sigma0_ks"), "{text}");
}

#[test]
fn simulate_trajectory_dump() {
    let dir = std::env::temp_dir();
    let traj = dir.join("sb_traj.csv");
    let out = run(&[
        "simulate",
        "--stop",
        "sigma0",
        "--n",
        "4",
        "--seed",
        "3",
        "--y",
        "1.0",
        "--dt",
        "0.001",
        "--record-stride",
        "50",
        "--trajectory",
        traj.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("hit_sigma0"));
    let tr = std::fs::read_to_string(Path::new(&traj)).unwrap();
    assert!(tr.lines().any(|l| l == "t,y,x"), "{tr}");
    let data_rows = tr.lines().filter(|l| !l.starts_with('#') && !l.starts_with('t')).count();
    assert!(data_rows > 2);
}
