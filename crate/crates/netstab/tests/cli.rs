//! End-to-end runs of the `netstab` binary: exit codes, output formats and
//! the round-trip guarantees of everything it writes.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use netstab::csvio::read_region_csv;

const DEMO_MODEL: &str = "[model]\nname = brusselator\nb = 1.3\nc = 14\n";
const DEMO_TRANSPORT: &str = "[transport]\nd_u = 0.5\nd_v = 0.5\ntau_u = 2\ntau_v = 1\n";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_netstab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn spectrum_rows(csv: &str) -> Vec<(f64, f64)> {
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("index,re,im"));
    lines
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[1].parse().unwrap(), f[2].parse().unwrap())
        })
        .collect()
}

#[test]
fn spectrum_of_a_directed_three_cycle_matches_the_circulant_form() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "cycle.txt", "n=3\n0 1 1.0\n1 2 1.0\n2 0 1.0\n");
    let cfg = write(dir.path(), "run.ini", "[network]\nedge_list = cycle.txt\n");

    let out = run(&["spectrum", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let rows = spectrum_rows(&stdout(&out));
    assert_eq!(rows.len(), 3);

    // Circulant ring: eigenvalues exp(2 pi i m / 3) - 1.
    let third = 2.0 * std::f64::consts::PI / 3.0;
    let mut expected = vec![(0.0, 0.0); 3];
    for (m, e) in expected.iter_mut().enumerate() {
        let angle = third * m as f64;
        *e = (angle.cos() - 1.0, angle.sin());
    }
    for (re, im) in rows {
        let hit = expected
            .iter()
            .position(|&(er, ei)| (re - er).abs() < 1e-8 && (im - ei).abs() < 1e-8);
        match hit {
            Some(i) => {
                expected.remove(i);
            }
            None => panic!("unexpected eigenvalue ({re}, {im}), remaining {expected:?}"),
        }
    }
}

#[test]
fn symmetrize_flag_makes_the_spectrum_real() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "run.ini",
        "[network]\ngenerator = newman_watts\nn = 30\nk = 3\np = 0.02\nseed = 5\nsymmetrize = true\n",
    );
    let out = run(&["spectrum", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    for (_, im) in spectrum_rows(&stdout(&out)) {
        assert!(im.abs() <= 1e-9, "imaginary part {im}");
    }
}

#[test]
fn missing_network_section_is_named_in_the_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "run.ini", DEMO_MODEL);
    let out = run(&["spectrum", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("[network]"), "{}", stderr(&out));
}

#[test]
fn check_exit_codes_follow_the_verdict() {
    let dir = tempfile::tempdir().unwrap();
    let network = "[network]\ngenerator = newman_watts\nn = 50\nk = 3\np = 0.005\nseed = 42\n";
    let directed = write(
        dir.path(),
        "directed.ini",
        &format!("{DEMO_MODEL}{DEMO_TRANSPORT}{network}"),
    );
    let symmetric = write(
        dir.path(),
        "symmetric.ini",
        &format!("{DEMO_MODEL}{DEMO_TRANSPORT}{network}symmetrize = true\n"),
    );

    let out = run(&["check", "--config", directed.to_str().unwrap()]);
    assert_eq!(code(&out), 1, "{}", stdout(&out));
    assert!(stdout(&out).contains("verdict: unstable"));

    let json = dir.path().join("report.json");
    let out = run(&[
        "check",
        "--config",
        symmetric.to_str().unwrap(),
        "--out",
        json.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).contains("verdict: stable"));
    let record: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(record["stable"], true);
    assert_eq!(record["modes"].as_array().unwrap().len(), 50);
}

#[test]
fn tau_u_zero_exits_with_a_precondition_message() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "run.ini",
        &format!("{DEMO_MODEL}[transport]\nd_u = 0.5\nd_v = 0.5\ntau_u = 0\ntau_v = 1\n"),
    );
    let out = run(&["check", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    let msg = stderr(&out);
    assert!(
        msg.contains("[transport]") && msg.contains("positive"),
        "{msg}"
    );
}

#[test]
fn scan_csv_is_deterministic_and_readable() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "run.ini",
        &format!("{DEMO_MODEL}{DEMO_TRANSPORT}[scan]\nresolution = 13\n"),
    );

    let first = run(&["scan", "--config", cfg.to_str().unwrap()]);
    let second = run(&["scan", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&first), 0, "{}", stderr(&first));
    assert_eq!(first.stdout, second.stdout);

    let rows = read_region_csv(&stdout(&first)).unwrap();
    assert_eq!(rows.len(), 13 * 13);
    // The real axis is entirely stable at these parameters; far-off-axis
    // cells are not.
    for row in &rows {
        if row.axis2 == 0.0 {
            assert!(row.stable, "unstable on the real axis at {}", row.axis1);
        }
    }
    assert!(rows.iter().any(|r| !r.stable));
}

#[test]
fn scan_svg_needs_out_and_writes_next_to_it() {
    let dir = tempfile::tempdir().unwrap();
    let network = "[network]\ngenerator = newman_watts\nn = 20\nk = 3\np = 0.01\nseed = 9\n";
    let cfg = write(
        dir.path(),
        "run.ini",
        &format!("{DEMO_MODEL}{DEMO_TRANSPORT}{network}[scan]\nresolution = 9\n"),
    );

    let out = run(&["scan", "--config", cfg.to_str().unwrap(), "--svg"]);
    assert_eq!(code(&out), 2, "--svg without --out must be rejected");

    let csv = dir.path().join("map.csv");
    let out = run(&[
        "scan",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        csv.to_str().unwrap(),
        "--svg",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let svg = std::fs::read_to_string(dir.path().join("map.svg")).unwrap();
    assert!(svg.starts_with("<svg"));
    assert!(svg.contains("<circle"), "spectrum overlay expected");
    let rows = read_region_csv(&std::fs::read_to_string(&csv).unwrap()).unwrap();
    assert_eq!(rows.len(), 81);
}

#[test]
fn simulate_agrees_with_the_linear_prediction() {
    let dir = tempfile::tempdir().unwrap();
    // Plain k=2 ring, comfortably inside the stable region.
    let network = "[network]\ngenerator = newman_watts\nn = 8\nk = 2\np = 0\nseed = 1\n";
    let sim = "[sim]\nhorizon = 120\nseed = 11\n";
    let cfg = write(
        dir.path(),
        "run.ini",
        &format!("{DEMO_MODEL}{DEMO_TRANSPORT}{network}{sim}"),
    );

    let traj = dir.path().join("traj.csv");
    let out = run(&[
        "simulate",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        traj.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    let record: serde_json::Value = serde_json::from_str(text.lines().last().unwrap()).unwrap();
    assert_eq!(record["verdict"], "stable");
    assert_eq!(record["seed"], 11);
    assert!(record["rate"].as_f64().unwrap() < 0.0);
    assert!(text.contains("difference"), "{text}");

    let csv = std::fs::read_to_string(&traj).unwrap();
    assert!(csv.starts_with("t,node,u,v,du,dv\n"));
    assert_eq!(csv.lines().nth(1).unwrap().split(',').count(), 6);
}

#[test]
fn oversized_dt_warns_and_flags_the_blow_up() {
    let dir = tempfile::tempdir().unwrap();
    let network = "[network]\ngenerator = newman_watts\nn = 8\nk = 2\np = 0\nseed = 1\n";
    let sim = "[sim]\nhorizon = 120\nseed = 11\ndt = 1.25\n";
    let cfg = write(
        dir.path(),
        "run.ini",
        &format!("{DEMO_MODEL}{DEMO_TRANSPORT}{network}{sim}"),
    );
    let out = run(&[
        "simulate",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        dir.path().join("t.csv").to_str().unwrap(),
    ]);
    assert!(stderr(&out).contains("warning"), "{}", stderr(&out));
    if code(&out) == 0 {
        let text = stdout(&out);
        let record: serde_json::Value = serde_json::from_str(text.lines().last().unwrap()).unwrap();
        assert_eq!(record["verdict"], "blow-up", "{text}");
    }
}

#[test]
fn seed_flag_overrides_the_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "run.ini",
        "[network]\ngenerator = newman_watts\nn = 16\nk = 2\np = 0.3\nseed = 1\n",
    );
    let base = run(&["spectrum", "--config", cfg.to_str().unwrap()]);
    let same = run(&["spectrum", "--config", cfg.to_str().unwrap(), "--seed", "1"]);
    let other = run(&["spectrum", "--config", cfg.to_str().unwrap(), "--seed", "2"]);
    assert_eq!(base.stdout, same.stdout);
    assert_ne!(base.stdout, other.stdout);
}

#[test]
fn roots_judges_known_quartics() {
    // (z + 1)^4: stable.
    let out = run(&["roots", "4", "0", "6", "0", "4", "0", "1", "0"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("verdict: stable"), "{text}");
    assert_eq!(text.matches("pivot a").count(), 4);

    // (z - 1)(z + 2)(z + 1)^2 = z^4 + 3 z^3 + z^2 - 3 z - 2: one root at +1.
    let out = run(&["roots", "3", "0", "1", "0", "-3", "0", "-2", "0"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("verdict: unstable"), "{text}");
    assert!(text.contains("+1.000000 +0.000000i"), "{text}");
}

#[test]
fn lambda_sample_scans_work_without_a_network() {
    let dir = tempfile::tempdir().unwrap();
    // Symmetric coupling: a single real eigenvalue sample, tau_v swept.
    let scan = "[scan]\naxis1 = tau_u\naxis1_min = 0.5\naxis1_max = 4\n\
                axis2 = tau_v\naxis2_min = 0.5\naxis2_max = 8\nresolution = 11\nlambda = -2,0\n";
    let cfg = write(
        dir.path(),
        "run.ini",
        &format!("{DEMO_MODEL}{DEMO_TRANSPORT}{scan}"),
    );
    let out = run(&["scan", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let rows = read_region_csv(&stdout(&out)).unwrap();
    assert_eq!(rows.len(), 121);
    assert!(rows.iter().any(|r| r.stable) && rows.iter().any(|r| !r.stable));
}
