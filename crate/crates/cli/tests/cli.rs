use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use noonsim_core::statefile::load_state;
use noonsim_core::{Complex64, LoadedState};
use serde_json::Value;

fn noonsim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_noonsim"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn summary(out: &Output) -> Value {
    let text = String::from_utf8_lossy(&out.stdout);
    let line = text.lines().last().expect("summary line");
    serde_json::from_str(line).expect("summary is JSON")
}

fn spin_amplitudes(path: &Path) -> Vec<Complex64> {
    match load_state(path).unwrap() {
        LoadedState::Spin(s) => s.amplitudes().to_vec(),
        other => panic!("expected a spin state, got {other:?}"),
    }
}

fn csv_rows(text: &str) -> (String, Vec<Vec<f64>>) {
    let mut lines = text.lines();
    let header = lines.next().unwrap().to_owned();
    let rows = lines
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    (header, rows)
}

#[test]
fn coherent_from_label() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c.json");
    let run = noonsim(&["coherent", "--twice-j", "2", "--gamma", "0+1i", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&run), 0);
    assert_eq!(summary(&run)["command"], "coherent");
    let amps = spin_amplitudes(&out);
    let want = [Complex64::new(0.5, 0.0), Complex64::new(0.0, FRAC_1_SQRT_2), Complex64::new(-0.5, 0.0)];
    for (a, w) in amps.iter().zip(want) {
        assert!((a - w).norm() < 1e-12);
    }
}

#[test]
fn coherent_from_angles() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c.json");
    let run = noonsim(&["coherent", "--twice-j", "2", "--theta", "0", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&run), 0);
    assert_eq!(spin_amplitudes(&out), vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)]);

    let run = noonsim(&["coherent", "--twice-j", "3", "--theta", "3.141592653589793", "--phi", "1", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&run), 0);
    assert_eq!(spin_amplitudes(&out)[3], Complex64::new(1.0, 0.0));
}

#[test]
fn usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c.json");
    let out = out.to_str().unwrap();
    for args in [
        vec!["coherent", "--twice-j", "2", "--gamma", "0+1i"],
        vec!["coherent", "--twice-j", "2", "--gamma", "0+1i", "--theta", "1", "--out", out],
        vec!["coherent", "--twice-j", "2", "--out", out],
        vec!["coherent", "--twice-j", "2", "--theta", "4", "--out", out],
        vec!["coherent", "--twice-j", "2", "--gamma", "abc", "--out", out],
        vec!["noon", "--n", "0"],
        vec!["noon", "--n", "2", "--gamma-choice", "2"],
        vec!["husimi", "--in", out, "--out", out, "--n-theta", "1"],
        vec!["bogus"],
    ] {
        let run = noonsim(&args);
        assert_eq!(code(&run), 2, "{args:?}: {}", String::from_utf8_lossy(&run.stderr));
    }
}

#[test]
fn help_exits_0() {
    assert_eq!(code(&noonsim(&["--help"])), 0);
    assert_eq!(code(&noonsim(&["noon", "--help"])), 0);
}

#[test]
fn io_errors_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let missing_dir = dir.path().join("no/such/dir/out.json");
    let run = noonsim(&["coherent", "--twice-j", "2", "--gamma", "1", "--out", missing_dir.to_str().unwrap()]);
    assert_eq!(code(&run), 3);

    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{\"schema_version\":\"spin-state/1\",\"twice_j\":1,\"amplitudes\":[[1,0],[1,0]]}").unwrap();
    let csv = dir.path().join("q.csv");
    let run = noonsim(&["husimi", "--in", bad.to_str().unwrap(), "--out", csv.to_str().unwrap()]);
    assert_eq!(code(&run), 3);

    fs::write(&bad, "not json").unwrap();
    let run = noonsim(&["husimi", "--in", bad.to_str().unwrap(), "--out", csv.to_str().unwrap()]);
    assert_eq!(code(&run), 3);

    let run = noonsim(&["husimi", "--in", dir.path().join("absent.json").to_str().unwrap(), "--out", csv.to_str().unwrap()]);
    assert_eq!(code(&run), 3);

    let run = noonsim(&["metrology", "--n-list", "2", "--out", missing_dir.to_str().unwrap()]);
    assert_eq!(code(&run), 3);
}

#[test]
fn noon_even_and_odd() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("n.json");
    let run = noonsim(&["noon", "--n", "2", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&run), 0);
    let s = summary(&run);
    assert!((s["fidelity"].as_f64().unwrap() - 1.0).abs() < 1e-10);
    match load_state(&out).unwrap() {
        LoadedState::TwoMode(t) => assert_eq!(t.n_total(), 2),
        other => panic!("expected a two-mode state, got {other:?}"),
    }

    let run = noonsim(&["noon", "--n", "6", "--gamma-choice", "1"]);
    assert_eq!(code(&run), 0);
    assert!((summary(&run)["fidelity"].as_f64().unwrap() - 1.0).abs() < 1e-10);

    let run = noonsim(&["noon", "--n", "3"]);
    assert_eq!(code(&run), 0);
    let s = summary(&run);
    assert_eq!(s["exploratory"], true);
    assert!(s["fidelity"].as_f64().unwrap() < 1.0 - 1e-8);
}

/// A linear term with `ωτ/4` off the `2π` lattice breaks the cat, which the
/// even-N self-check reports.
#[test]
fn noon_self_check_failure_exits_1() {
    let run = noonsim(&["noon", "--n", "2", "--omega", "0.3"]);
    assert_eq!(code(&run), 1);
    assert!(summary(&run)["fidelity"].as_f64().unwrap() < 1.0 - 1e-8);
}

#[test]
fn cat_command_writes_state() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("cat.json");
    let run = noonsim(&["cat", "--twice-j", "4", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&run), 0);
    let s = summary(&run);
    assert!((s["predicted_cat_fidelity"].as_f64().unwrap() - 1.0).abs() < 1e-10);
    assert!((s["two_component_fidelity"].as_f64().unwrap() - 1.0).abs() < 1e-10);

    let run = noonsim(&["cat", "--twice-j", "3", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&run), 0);
    assert!(summary(&run)["predicted_cat_fidelity"].is_null());
}

fn husimi_of(state: &Path, dir: &Path) -> (Vec<Vec<f64>>, Value) {
    let csv = dir.join("q.csv");
    let run = noonsim(&["husimi", "--in", state.to_str().unwrap(), "--out", csv.to_str().unwrap()]);
    assert_eq!(code(&run), 0, "{}", String::from_utf8_lossy(&run.stderr));
    let (header, rows) = csv_rows(&fs::read_to_string(&csv).unwrap());
    assert_eq!(header, "theta,phi,q");
    assert_eq!(rows.len(), 91 * 180);
    assert!(rows.iter().all(|r| (0.0..=1.0).contains(&r[2])));
    (rows, summary(&run))
}

#[test]
fn husimi_of_top_weight_peaks_at_south_pole() {
    let dir = tempfile::tempdir().unwrap();
    let state = dir.path().join("top.json");
    fs::write(&state, "{\"schema_version\":\"spin-state/1\",\"twice_j\":4,\"amplitudes\":[[0,0],[0,0],[0,0],[0,0],[1,0]]}").unwrap();
    let (rows, s) = husimi_of(&state, dir.path());
    assert_eq!(s["theta_at_max"].as_f64().unwrap(), PI);
    let best = rows.iter().map(|r| r[2]).fold(0.0, f64::max);
    assert!((best - 1.0).abs() < 1e-12);
}

#[test]
fn husimi_of_cat_has_two_equatorial_peaks() {
    let dir = tempfile::tempdir().unwrap();
    let state = dir.path().join("cat.json");
    let run = noonsim(&["cat", "--twice-j", "20", "--gamma", "0+1i", "--out", state.to_str().unwrap()]);
    assert_eq!(code(&run), 0);
    let (rows, _) = husimi_of(&state, dir.path());
    let qmax = rows.iter().map(|r| r[2]).fold(0.0, f64::max);
    let peaks: Vec<&Vec<f64>> = rows.iter().filter(|r| r[2] > qmax - 1e-9).collect();
    assert_eq!(peaks.len(), 2, "{peaks:?}");
    for (p, phi) in peaks.iter().zip([PI / 2.0, 3.0 * PI / 2.0]) {
        assert!((p[0] - PI / 2.0).abs() < 1e-12);
        assert!((p[1] - phi).abs() < 1e-12);
    }
    assert!((peaks[0][2] - peaks[1][2]).abs() < 1e-12);
}

#[test]
fn husimi_accepts_two_mode_files() {
    let dir = tempfile::tempdir().unwrap();
    let state = dir.path().join("n.json");
    assert_eq!(code(&noonsim(&["noon", "--n", "4", "--out", state.to_str().unwrap()])), 0);
    husimi_of(&state, dir.path());
}

#[test]
fn scan_csv() {
    let run = noonsim(&["scan", "--twice-j-list", "1,2,3,4", "--omega", "0"]);
    assert_eq!(code(&run), 0);
    let (header, rows) = csv_rows(&String::from_utf8(run.stdout).unwrap());
    assert_eq!(header, "twice_j,omega,fidelity,coeff_plus_re,coeff_plus_im,coeff_minus_re,coeff_minus_im");
    let fid: Vec<f64> = rows.iter().map(|r| r[2]).collect();
    // Spin 1/2 is trivially a single coherent state; spin 3/2 is not a cat.
    let want = [1.0, 1.0, 0.5, 1.0];
    for (f, w) in fid.iter().zip(want) {
        assert!((f - w).abs() < 1e-10, "{fid:?}");
    }

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("scan.csv");
    let run = noonsim(&["scan", "--twice-j-list", "2,4", "--omega", "0,0.5,1", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&run), 0);
    assert_eq!(summary(&run)["rows"], 6);
    assert_eq!(csv_rows(&fs::read_to_string(out).unwrap()).1.len(), 6);
}

#[test]
fn metrology_csv() {
    let run = noonsim(&["metrology", "--n-list", "1,2,4,8,16"]);
    assert_eq!(code(&run), 0);
    let (header, rows) = csv_rows(&String::from_utf8(run.stdout).unwrap());
    assert_eq!(header, "N,delta_phi_noon,delta_phi_sql_reference,qfi");
    for r in rows {
        assert!((r[1] - 1.0 / r[0]).abs() < 1e-12);
        assert!((r[2] - 1.0 / r[0].sqrt()).abs() < 1e-12);
        assert!((r[3] - r[0] * r[0]).abs() < 1e-8 * r[0] * r[0]);
    }
}

#[test]
fn verify_small_passes() {
    let run = noonsim(&["verify", "--max-twice-j", "8"]);
    assert_eq!(code(&run), 0);
    let s = summary(&run);
    assert_eq!(s["passed"], true);
    assert!(s["sections"].as_array().unwrap().len() >= 5);
}
