use std::path::Path;
use std::process::{Command, Output};

fn harness(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_harness")).args(args).env("HARNESS_OUT_DIR", out).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn unknown_flag_is_a_usage_error() {
    let d = tempfile::tempdir().unwrap();
    assert_eq!(code(&harness(&["--bogus", "verify"], d.path())), 2);
}

#[test]
fn unknown_config_key_is_a_config_error() {
    let d = tempfile::tempdir().unwrap();
    let cfg = d.path().join("bad.toml");
    std::fs::write(&cfg, "[grid]\nnx = 10\nwidth = 3\n").unwrap();
    let o = harness(&["--config", cfg.to_str().unwrap(), "verify"], d.path());
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("width"));
}

#[test]
fn supersonic_state_is_rejected() {
    let d = tempfile::tempdir().unwrap();
    assert_eq!(code(&harness(&["--mn", "1.5", "sweep"], d.path())), 2);
}

#[test]
fn missing_config_file_is_an_io_error() {
    let d = tempfile::tempdir().unwrap();
    assert_eq!(code(&harness(&["--config", "/nonexistent/x.toml", "verify"], d.path())), 1);
}

#[test]
fn verify_passes() {
    let d = tempfile::tempdir().unwrap();
    let o = harness(&["verify"], d.path());
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let stdout = String::from_utf8_lossy(&o.stdout);
    assert!(stdout.lines().all(|l| l.starts_with("PASS")));
}

#[test]
fn discrete_analysis_writes_csv_and_svg_with_config_echo() {
    let d = tempfile::tempdir().unwrap();
    let o = harness(&["--mn", "0.1", "analyze-discrete", "--samples", "16"], d.path());
    assert_eq!(code(&o), 0);
    let csv = std::fs::read_to_string(d.path().join("rate_curve_mn0.1.csv")).unwrap();
    assert!(csv.starts_with("# [grid]"));
    assert!(csv.contains("# [derived]"));
    assert!(csv.lines().filter(|l| !l.starts_with('#')).count() > 3 * 16);
    let svg = std::fs::read_to_string(d.path().join("rate_curve_mn0.1.svg")).unwrap();
    assert!(svg.starts_with("<svg") || svg.starts_with("<?xml"));
    assert!(d.path().join("rate_curve_mn0.1.points.csv").exists());
}

#[test]
fn same_seed_gives_identical_bytes() {
    let d = tempfile::tempdir().unwrap();
    let args = ["--mn", "0.3", "--closure", "anti-periodic", "--nx", "40", "--ny", "10", "--seed", "7", "solve"];
    let snapshot = || {
        assert_eq!(code(&harness(&args, d.path())), 0);
        let mut files: Vec<_> = std::fs::read_dir(d.path()).unwrap().map(|e| e.unwrap().path()).collect();
        files.sort();
        let stable = |text: String| text.lines().filter(|l| !l.contains("\"seconds\"")).collect::<Vec<_>>().join("\n");
        files.into_iter().map(|p| (p.clone(), stable(std::fs::read_to_string(p).unwrap()))).collect::<Vec<_>>()
    };
    let first = snapshot();
    assert!(!first.is_empty());
    assert_eq!(first, snapshot());
}

#[test]
fn out_flag_beats_environment() {
    let (env_dir, flag_dir) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let o = harness(&["--out", flag_dir.path().to_str().unwrap(), "--mn", "0.1", "analyze-continuous", "--samples", "8"], env_dir.path());
    assert_eq!(code(&o), 0);
    assert_eq!(std::fs::read_dir(env_dir.path()).unwrap().count(), 0);
    assert!(std::fs::read_dir(flag_dir.path()).unwrap().count() > 0);
}

#[test]
fn wall_rig_new_method_divergence_is_reported() {
    let d = tempfile::tempdir().unwrap();
    let base = ["--mn", "0.1", "--method", "new", "--max-iter", "40"];
    assert_eq!(code(&harness(&[&base[..], &["solve"]].concat(), d.path())), 3);
    assert_eq!(code(&harness(&[&base[..], &["solve", "--expect-divergence"]].concat(), d.path())), 0);
}
