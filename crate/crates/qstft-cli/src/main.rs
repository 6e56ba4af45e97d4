//! Command line front end: signal ingestion, transform execution and
//! verification reports over the CSV/JSON contracts of the core crate.
//!
//! Exit codes: 0 success (for `verify`: every residual within tolerance),
//! 1 verification failure, 2 malformed input CSV, 3 filesystem error,
//! 4 invalid configuration.

use clap::error::ErrorKind;
use clap::{CommandFactory, Parser, Subcommand};
use qstft_core::bargmann::bargmann_coefficients;
use qstft_core::basis::HermiteBasis;
use qstft_core::grid::{make_grid, GridRule, LineGrid};
use qstft_core::io::{read_grid_csv, read_signal_csv, write_grid_csv, write_signal_csv};
use qstft_core::qft::{qft_forward, qft_inverse, QftPlan};
use qstft_core::qstft::{qstft_grid, qstft_reconstruct};
use qstft_core::report::{run_suite, Suite};
use qstft_core::{ImaginaryUnit, Quaternion};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "qstft",
    version,
    about = "Quaternion short-time Fourier analysis over slice planes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a weighted Hermite function onto a uniform grid as signal CSV.
    Hermite {
        /// Gaussian weight scale (the self-dual window uses 2*pi).
        #[arg(long, default_value_t = std::f64::consts::TAU)]
        nu: f64,
        /// Degree of the function.
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = -8.0, allow_negative_numbers = true)]
        tmin: f64,
        #[arg(long, default_value_t = 8.0, allow_negative_numbers = true)]
        tmax: f64,
        #[arg(long, default_value_t = 1024)]
        nt: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Expand a signal into transform-image power series coefficients.
    Bargmann {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 1.0)]
        nu: f64,
        /// Highest coefficient degree to compute.
        #[arg(long, default_value_t = 20)]
        kmax: usize,
        /// Output CSV with columns k, cw, cx, cy, cz.
        #[arg(long)]
        out: PathBuf,
    },
    /// Fourier-transform a signal within the slice of the chosen unit.
    Qft {
        #[arg(long = "in")]
        input: PathBuf,
        /// Slice unit: i, j, k, or a comma triple like 1,0,1.
        #[arg(long, default_value = "i")]
        unit: String,
        /// Apply the inverse transform instead.
        #[arg(long)]
        inverse: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Short-time transform of a signal onto a time-frequency lattice.
    Analyze {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = -4.0, allow_negative_numbers = true)]
        xmin: f64,
        #[arg(long, default_value_t = 4.0, allow_negative_numbers = true)]
        xmax: f64,
        #[arg(long, default_value_t = 129)]
        nx: usize,
        #[arg(long, default_value_t = -4.0, allow_negative_numbers = true)]
        wmin: f64,
        #[arg(long, default_value_t = 4.0, allow_negative_numbers = true)]
        wmax: f64,
        #[arg(long, default_value_t = 129)]
        nw: usize,
        #[arg(long, default_value = "i")]
        unit: String,
        /// Output CSV with columns x, w, vw, vx, vy, vz, mag.
        #[arg(long)]
        out: PathBuf,
    },
    /// Synthesize a time signal back from a lattice CSV.
    Reconstruct {
        #[arg(long = "in")]
        input: PathBuf,
        /// Slice unit the lattice was analyzed in (the CSV does not carry it).
        #[arg(long, default_value = "i")]
        unit: String,
        #[arg(long, default_value_t = -8.0, allow_negative_numbers = true)]
        tmin: f64,
        #[arg(long, default_value_t = 8.0, allow_negative_numbers = true)]
        tmax: f64,
        #[arg(long, default_value_t = 1024)]
        nt: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run identity-verification suites and emit a JSON report.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        report: PathBuf,
    },
}

/// Failure classes with their contractual exit codes.
enum Failure {
    /// Some verification residual exceeded its tolerance.
    Verify,
    /// Malformed input CSV (message carries the line number).
    Parse(String),
    Io(String),
    Config(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verify => 1,
            Failure::Parse(_) => 2,
            Failure::Io(_) => 3,
            Failure::Config(_) => 4,
        }
    }

    fn message(&self) -> Option<&str> {
        match self {
            Failure::Verify => None,
            Failure::Parse(m) | Failure::Io(m) | Failure::Config(m) => Some(m),
        }
    }
}

fn main() -> ExitCode {
    // Map clap usage errors onto the config exit code; help and version
    // remain ordinary successful exits.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(4);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if let Some(m) = f.message() {
                let name = Cli::command().get_name().to_string();
                eprintln!("{name}: {m}");
            }
            ExitCode::from(f.code())
        }
    }
}

fn parse_unit(s: &str) -> Result<ImaginaryUnit, Failure> {
    match s.trim() {
        "i" => Ok(ImaginaryUnit::I),
        "j" => Ok(ImaginaryUnit::J),
        "k" => Ok(ImaginaryUnit::K),
        other => {
            let parts: Vec<&str> = other.split(',').collect();
            if parts.len() != 3 {
                return Err(Failure::Config(format!(
                    "unit must be i, j, k or a comma triple, got {other:?}"
                )));
            }
            let mut c = [0.0f64; 3];
            for (slot, part) in c.iter_mut().zip(&parts) {
                *slot = part.trim().parse().map_err(|_| {
                    Failure::Config(format!("unit component {part:?} is not a number"))
                })?;
            }
            ImaginaryUnit::new(c[0], c[1], c[2]).map_err(|e| Failure::Config(e.to_string()))
        }
    }
}

fn build_grid(lo: f64, hi: f64, n: usize) -> Result<LineGrid, Failure> {
    make_grid(lo, hi, n, GridRule::Trapezoid).map_err(|e| Failure::Config(e.to_string()))
}

fn read_input(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))
}

/// Writes through a sibling temp file and renames, so a crash never leaves a
/// half-written output and concurrent readers see old or new, never a mix.
fn write_atomic(path: &Path, data: &str) -> Result<(), Failure> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let stem = path.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    if stem.is_empty() {
        return Err(Failure::Config(format!("output path {} has no file name", path.display())));
    }
    let tmp = dir.join(format!(".{stem}.tmp.{}", std::process::id()));
    let finish = std::fs::write(&tmp, data).and_then(|_| std::fs::rename(&tmp, path));
    if let Err(e) = finish {
        let _ = std::fs::remove_file(&tmp);
        return Err(Failure::Io(format!("cannot write {}: {e}", path.display())));
    }
    Ok(())
}

fn coefficients_csv(coeffs: &[Quaternion]) -> String {
    let mut s = String::from("k,cw,cx,cy,cz\n");
    for (k, c) in coeffs.iter().enumerate() {
        s.push_str(&format!("{k},{},{},{},{}\n", c.w, c.x, c.y, c.z));
    }
    s
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Hermite { nu, k, tmin, tmax, nt, out } => {
            let basis =
                HermiteBasis::new(nu, k).map_err(|e| Failure::Config(e.to_string()))?;
            let grid = build_grid(tmin, tmax, nt)?;
            write_atomic(&out, &write_signal_csv(&basis.sample(k, &grid)))
        }
        Command::Bargmann { input, nu, kmax, out } => {
            if !(nu.is_finite() && nu > 0.0) {
                return Err(Failure::Config(format!("nu must be positive, got {nu}")));
            }
            let text = read_input(&input)?;
            let f = read_signal_csv(&text).map_err(|e| Failure::Parse(e.to_string()))?;
            let seq = bargmann_coefficients(&f, nu, kmax)
                .map_err(|e| Failure::Config(e.to_string()))?;
            write_atomic(&out, &coefficients_csv(&seq.coeffs))
        }
        Command::Qft { input, unit, inverse, out } => {
            let unit = parse_unit(&unit)?;
            let text = read_input(&input)?;
            let f = read_signal_csv(&text).map_err(|e| Failure::Parse(e.to_string()))?;
            let plan = QftPlan::new(unit, f.grid.clone(), f.grid.clone());
            let g = if inverse { qft_inverse(&f, &plan) } else { qft_forward(&f, &plan) }
                .map_err(|e| Failure::Config(e.to_string()))?;
            write_atomic(&out, &write_signal_csv(&g))
        }
        Command::Analyze { input, xmin, xmax, nx, wmin, wmax, nw, unit, out } => {
            let unit = parse_unit(&unit)?;
            let xgrid = build_grid(xmin, xmax, nx)?;
            let wgrid = build_grid(wmin, wmax, nw)?;
            let text = read_input(&input)?;
            let f = read_signal_csv(&text).map_err(|e| Failure::Parse(e.to_string()))?;
            let tf = qstft_grid(&f, &xgrid, &wgrid, unit);
            write_atomic(&out, &write_grid_csv(&tf))
        }
        Command::Reconstruct { input, unit, tmin, tmax, nt, out } => {
            let unit = parse_unit(&unit)?;
            let tgrid = build_grid(tmin, tmax, nt)?;
            let text = read_input(&input)?;
            let tf = read_grid_csv(&text, unit).map_err(|e| Failure::Parse(e.to_string()))?;
            write_atomic(&out, &write_signal_csv(&qstft_reconstruct(&tf, &tgrid)))
        }
        Command::Verify { suite, report } => {
            let suite: Suite = suite.parse().map_err(Failure::Config)?;
            let rep = run_suite(suite);
            eprint!("{}", rep.render_table());
            write_atomic(&report, &rep.to_json())?;
            if rep.all_pass {
                Ok(())
            } else {
                Err(Failure::Verify)
            }
        }
    }
}
