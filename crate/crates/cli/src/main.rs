//! `noonsim` command-line front end.
//!
//! Exit codes: 0 success, 1 contract or self-check failure, 2 usage error,
//! 3 I/O or malformed input.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

#[derive(Debug, Parser)]
#[command(name = "noonsim", version, about = "Spin cats, N00N states and their phase sensitivity")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write an SU(2) coherent state given by angles or by its stereographic label.
    #[command(group(ArgGroup::new("label").required(true).args(["theta", "gamma"])))]
    Coherent {
        #[arg(long)]
        twice_j: u32,
        /// Polar angle in [0, pi]; pi selects the pole label.
        #[arg(long, allow_hyphen_values = true)]
        theta: Option<f64>,
        /// Azimuth in radians (reduced modulo 2pi); defaults to 0.
        #[arg(long, requires = "theta", allow_hyphen_values = true)]
        phi: Option<f64>,
        /// Complex label such as `0+1i`.
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        gamma: Option<Complex64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Evolve a coherent state for a quarter period and write the cat state.
    Cat {
        #[arg(long)]
        twice_j: u32,
        #[arg(long, value_parser = parse_complex, default_value = "0+1i", allow_hyphen_values = true)]
        gamma: Complex64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        omega: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the N00N pipeline for N photons.
    Noon {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        omega: f64,
        #[arg(long, value_enum, default_value_t = GammaChoice::I)]
        gamma_choice: GammaChoice,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export the Husimi Q function of a state file on a (theta, phi) grid.
    Husimi {
        #[arg(long = "in", alias = "input")]
        input: PathBuf,
        #[arg(long, default_value_t = 91)]
        n_theta: usize,
        #[arg(long, default_value_t = 180)]
        n_phi: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Two-component fits of quarter-period states over a (2j, omega) grid.
    Scan {
        #[arg(long, value_delimiter = ',', required = true)]
        twice_j_list: Vec<u32>,
        #[arg(long = "omega", alias = "omega-list", value_delimiter = ',', default_value = "0", allow_hyphen_values = true)]
        omega_list: Vec<f64>,
        #[arg(long, value_parser = parse_complex, default_value = "0+1i", allow_hyphen_values = true)]
        gamma: Complex64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Phase uncertainty and Fisher information of N00N probes.
    Metrology {
        #[arg(long, value_delimiter = ',', required = true)]
        n_list: Vec<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the self-check suite up to the given irrep size.
    Verify {
        #[arg(long, default_value_t = 60)]
        max_twice_j: u32,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum GammaChoice {
    /// gamma = i, final rotation about x.
    #[value(name = "i")]
    I,
    /// gamma = 1, final rotation about y.
    #[value(name = "1")]
    One,
}

fn parse_complex(s: &str) -> Result<Complex64, String> {
    s.trim()
        .parse::<Complex64>()
        .map_err(|e| format!("not a complex number ({e:?}); expected e.g. 0+1i"))
        .and_then(|g| {
            if g.re.is_finite() && g.im.is_finite() {
                Ok(g)
            } else {
                Err("label must be finite".into())
            }
        })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { commands::EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
