use std::collections::BTreeMap;
use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use noonsim_core::coherent::{coherent_state, BlochDirection, StereoLabel};
use noonsim_core::dynamics::{self, fit_two_component, quarter_period_evolve, KerrHamiltonian};
use noonsim_core::husimi::husimi_grid;
use noonsim_core::schwinger::{fock_to_spin, make_noon, noon_fidelity, NoonRoute};
use noonsim_core::statefile::{self, LoadedState};
use noonsim_core::{metrology, report, verify, Complex64, Error, HalfInteger};
use serde_json::json;

use crate::{Command, GammaChoice};

pub const EXIT_CONTRACT: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_IO: u8 = 3;

/// Even-N pipeline fidelity below `1 - NOON_SELF_CHECK` fails `noon`.
const NOON_SELF_CHECK: f64 = 1e-8;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
    Contract(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Contract(_) => EXIT_CONTRACT,
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io(_) => EXIT_IO,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Io(m) | CliError::Contract(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Io(_) | Error::StateFile(_) => CliError::Io(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> CliError + '_ {
    move |e| CliError::Io(format!("{}: {e}", path.display()))
}

fn fmt_complex(g: Complex64) -> String {
    format!("{}{:+}i", g.re, g.im)
}

/// Runs `write` against `path`, or standard output when no path is given.
fn with_output(
    path: Option<&PathBuf>,
    write: impl FnOnce(&mut dyn Write) -> io::Result<()>,
) -> Result<(), CliError> {
    match path {
        Some(p) => {
            let file = File::create(p).map_err(io_err(p))?;
            let mut w = BufWriter::new(file);
            write(&mut w).map_err(io_err(p))?;
            w.flush().map_err(io_err(p))
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            write(&mut lock).map_err(|e| CliError::Io(format!("stdout: {e}")))
        }
    }
}

pub fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Coherent {
            twice_j,
            theta,
            phi,
            gamma,
            out,
        } => coherent(twice_j, theta, phi, gamma, &out),
        Command::Cat {
            twice_j,
            gamma,
            omega,
            out,
        } => cat(twice_j, gamma, omega, &out),
        Command::Noon {
            n,
            omega,
            gamma_choice,
            out,
        } => noon(n, omega, gamma_choice, out.as_deref()),
        Command::Husimi {
            input,
            n_theta,
            n_phi,
            out,
        } => husimi(&input, n_theta, n_phi, &out),
        Command::Scan {
            twice_j_list,
            omega_list,
            gamma,
            out,
        } => scan(&twice_j_list, &omega_list, gamma, out.as_ref()),
        Command::Metrology { n_list, out } => metrology_table(&n_list, out.as_ref()),
        Command::Verify { max_twice_j } => run_verify(max_twice_j),
    }
}

fn coherent(
    twice_j: u32,
    theta: Option<f64>,
    phi: Option<f64>,
    gamma: Option<Complex64>,
    out: &Path,
) -> Result<(), CliError> {
    let j = HalfInteger::from_twice(twice_j);
    let label = match (theta, gamma) {
        (Some(t), None) => BlochDirection::wrapped(t, phi.unwrap_or(0.0))?.to_label(),
        (None, Some(g)) => StereoLabel::Finite(g),
        _ => {
            return Err(CliError::Usage(
                "give exactly one of --theta/--phi or --gamma".into(),
            ))
        }
    };
    let state = coherent_state(j, &label);
    let mut meta = BTreeMap::new();
    meta.insert("kind".into(), "coherent".into());
    meta.insert(
        "gamma".into(),
        label.as_finite().map_or("inf".into(), fmt_complex),
    );
    statefile::save_spin(out, &state, meta)?;
    eprintln!("wrote coherent state 2j={twice_j} to {}", out.display());
    println!(
        "{}",
        json!({"command": "coherent", "twice_j": twice_j, "out": out.display().to_string()})
    );
    Ok(())
}

fn cat(twice_j: u32, gamma: Complex64, omega: f64, out: &Path) -> Result<(), CliError> {
    let j = HalfInteger::from_twice(twice_j);
    let h = KerrHamiltonian::z(j, omega)?;
    let state = quarter_period_evolve(&h, &coherent_state(j, &StereoLabel::Finite(gamma)))?;
    let fit = fit_two_component(&state, gamma)?;
    let identity = match dynamics::verify_cat_identity(j, gamma, omega) {
        Ok(f) => Some(f),
        Err(Error::HalfIntegerUnsupported(_) | Error::PreconditionViolated(_)) => None,
        Err(e) => return Err(e.into()),
    };
    let mut meta = BTreeMap::new();
    meta.insert("kind".into(), "quarter-period-cat".into());
    meta.insert("gamma".into(), fmt_complex(gamma));
    meta.insert("omega".into(), omega.to_string());
    statefile::save_spin(out, &state, meta)?;
    println!(
        "{}",
        json!({
            "command": "cat",
            "twice_j": twice_j,
            "two_component_fidelity": fit.fidelity,
            "coeff_plus": [fit.decomposition.coeff_plus.re, fit.decomposition.coeff_plus.im],
            "coeff_minus": [fit.decomposition.coeff_minus.re, fit.decomposition.coeff_minus.im],
            "predicted_cat_fidelity": identity,
        })
    );
    Ok(())
}

fn noon(n: u32, omega: f64, choice: GammaChoice, out: Option<&Path>) -> Result<(), CliError> {
    if n == 0 {
        return Err(CliError::Usage("--n must be at least 1".into()));
    }
    let route = match choice {
        GammaChoice::I => NoonRoute::LabelI,
        GammaChoice::One => NoonRoute::LabelOne,
    };
    let state = make_noon(n, omega, route)?;
    let (fidelity, best_phi) = noon_fidelity(&state);
    if let Some(path) = out {
        let mut meta = BTreeMap::new();
        meta.insert("kind".into(), "noon-pipeline".into());
        meta.insert("omega".into(), omega.to_string());
        meta.insert("route".into(), format!("{route:?}"));
        statefile::save_two_mode(path, &state, meta)?;
    }
    let exploratory = n % 2 == 1;
    println!(
        "{}",
        json!({
            "command": "noon",
            "n": n,
            "fidelity": fidelity,
            "best_phi": best_phi,
            "off_support_mass": state.off_support_mass(),
            "exploratory": exploratory,
        })
    );
    if !exploratory && !(fidelity >= 1.0 - NOON_SELF_CHECK) {
        return Err(CliError::Contract(format!(
            "N00N self-check failed: fidelity {fidelity} < 1 - {NOON_SELF_CHECK:e}"
        )));
    }
    Ok(())
}

fn husimi(input: &Path, n_theta: usize, n_phi: usize, out: &Path) -> Result<(), CliError> {
    if n_theta < 2 || n_phi < 1 {
        return Err(CliError::Usage(format!(
            "grid needs --n-theta >= 2 and --n-phi >= 1, got {n_theta} x {n_phi}"
        )));
    }
    let state = match statefile::load_state(input)? {
        LoadedState::Spin(s) => s,
        LoadedState::TwoMode(t) => fock_to_spin(&t),
    };
    let grid = husimi_grid(&state, n_theta, n_phi)?;
    with_output(Some(&out.to_path_buf()), |w| report::write_husimi(w, &grid))?;
    let (imax, qmax) = grid
        .values
        .iter()
        .copied()
        .enumerate()
        .fold((0, f64::MIN), |best, (k, q)| if q > best.1 { (k, q) } else { best });
    println!(
        "{}",
        json!({
            "command": "husimi",
            "cells": grid.values.len(),
            "q_max": qmax,
            "theta_at_max": grid.thetas[imax / n_phi],
            "phi_at_max": grid.phis[imax % n_phi],
        })
    );
    Ok(())
}

fn scan(
    twice_j_list: &[u32],
    omega_list: &[f64],
    gamma: Complex64,
    out: Option<&PathBuf>,
) -> Result<(), CliError> {
    let js: Vec<HalfInteger> = twice_j_list.iter().map(|&t| HalfInteger::from_twice(t)).collect();
    let rows = dynamics::cat_scan(&js, omega_list, gamma)?;
    with_output(out, |w| report::write_cat_scan(w, &rows))?;
    if out.is_some() {
        println!("{}", json!({"command": "scan", "rows": rows.len()}));
    }
    Ok(())
}

fn metrology_table(n_list: &[u32], out: Option<&PathBuf>) -> Result<(), CliError> {
    let rows = metrology::scaling_table(n_list)?;
    with_output(out, |w| report::write_scaling(w, &rows))?;
    if out.is_some() {
        println!("{}", json!({"command": "metrology", "rows": rows.len()}));
    }
    Ok(())
}

fn run_verify(max_twice_j: u32) -> Result<(), CliError> {
    let report = verify::run_suite(max_twice_j);
    eprintln!("{:<16} {:>8} {:>9}  result", "section", "checks", "failures");
    for s in &report.sections {
        let verdict = if s.passed() { "PASS" } else { "FAIL" };
        eprintln!("{:<16} {:>8} {:>9}  {verdict}", s.name, s.checks, s.failures.len());
        for f in s.failures.iter().take(5) {
            eprintln!("    {f}");
        }
        for n in &s.notes {
            eprintln!("    note: {n}");
        }
    }
    let sections: Vec<_> = report
        .sections
        .iter()
        .map(|s| json!({"name": s.name, "checks": s.checks, "failures": s.failures.len(), "passed": s.passed()}))
        .collect();
    println!(
        "{}",
        json!({
            "command": "verify",
            "max_twice_j": max_twice_j,
            "passed": report.passed(),
            "checks": report.total_checks(),
            "sections": sections,
        })
    );
    if report.passed() {
        Ok(())
    } else {
        Err(CliError::Contract("verification suite reported failures".into()))
    }
}
