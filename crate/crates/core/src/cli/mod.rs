//! The `amqc` command line.
//!
//! Exit codes: 0 success, 1 runtime or I/O failure (including failed
//! verification checks), 2 usage error.

mod demo;
pub mod verify;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, IsTerminal, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::spin::{contraction_probe, doubling_sizes, fan_error, EnsembleSize};

pub use demo::DemoKind;
pub use verify::{Check, Suite, SuiteResult};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error(transparent)]
    Model(#[from] crate::Error),
    #[error("{0} verification check(s) failed")]
    Failed(usize),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use crate::Error::*;
        match self {
            CliError::Usage(_) => 2,
            CliError::Model(InvalidArgument(_) | InvalidConvention(_) | DimensionTooSmall { .. } | LoopUnclosable(_) | OpenLoop { .. }) => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "amqc", version, about = "Ancilla-mediated gates via controlled displacements")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run identity suites and report the worst deviation of each check.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
    },
    /// Tabulate spin-ensemble loop errors over a (zeta_n, N) grid as CSV.
    Sweep(SweepArgs),
    /// Build a gate sequence, print it and verify the register gate.
    Demo(demo::DemoArgs),
    /// Tabulate the large-N approach of the spin ensemble to a field mode.
    Contraction(ContractionArgs),
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, default_value_t = 1.0)]
    pub zeta_min: f64,
    #[arg(long, default_value_t = 50.0)]
    pub zeta_max: f64,
    #[arg(long, default_value_t = 50)]
    pub zeta_steps: usize,
    /// Comma-separated ensemble sizes; scientific notation allowed.
    #[arg(long, value_delimiter = ',', value_parser = parse_size, default_value = "1e5,1e6,1e7,1e8,1e9")]
    pub n_list: Vec<u64>,
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ContractionArgs {
    /// Real part of zeta.
    #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
    pub zeta: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub zeta_im: f64,
    #[arg(long, value_parser = parse_size, default_value = "1000")]
    pub n_min: u64,
    #[arg(long, value_parser = parse_size, default_value = "1024000")]
    pub n_max: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_size(s: &str) -> Result<u64, String> {
    let v: f64 = s.trim().parse().map_err(|_| format!("not a number: {s}"))?;
    if !(v >= 1.0 && v.fract() == 0.0 && v <= u64::MAX as f64) {
        return Err(format!("ensemble size must be a positive integer, got {s}"));
    }
    Ok(v as u64)
}

/// ANSI styling, disabled by `NO_COLOR` or a non-terminal stdout.
#[derive(Clone, Copy, Debug)]
pub struct Style {
    pub color: bool,
}

impl Style {
    pub fn detect() -> Self {
        let no_color = std::env::var_os("NO_COLOR").is_some_and(|v| !v.is_empty());
        Style { color: !no_color && io::stdout().is_terminal() }
    }

    fn paint(self, text: &str, code: &str) -> String {
        if self.color {
            format!("\x1b[{code}m{text}\x1b[0m")
        } else {
            text.to_string()
        }
    }

    pub fn status(self, ok: bool) -> String {
        if ok {
            self.paint("ok  ", "32")
        } else {
            self.paint("FAIL", "31")
        }
    }
}

/// Parse `args` and run; returns the process exit code.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code() as u8;
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match execute(cli, &mut out, Style::detect()) {
        Ok(()) => 0,
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(cli: Cli, out: &mut dyn Write, style: Style) -> Result<(), CliError> {
    match cli.command {
        Command::Verify { suite } => cmd_verify(suite, out, style),
        Command::Sweep(args) => cmd_sweep(&args, out),
        Command::Demo(args) => demo::cmd_demo(&args, out),
        Command::Contraction(args) => cmd_contraction(&args, out),
    }
}

fn cmd_verify(suite: Suite, out: &mut dyn Write, style: Style) -> Result<(), CliError> {
    let results = verify::run(suite)?;
    let mut failed = 0;
    for r in &results {
        writeln!(out, "{}", r.name)?;
        for c in &r.checks {
            writeln!(out, "  {} {:<48} worst {:.3e}  tol {:.0e}  cases {}", style.status(c.passed()), c.name, c.deviation, c.tolerance, c.cases)?;
        }
        writeln!(out, "  {}/{} passed, worst deviation {:.3e}, {:.2?}", r.passed_count(), r.run_count(), r.worst_deviation(), r.elapsed)?;
        failed += r.run_count() - r.passed_count();
    }
    if failed > 0 {
        return Err(CliError::Failed(failed));
    }
    Ok(())
}

/// Open `path` for writing, or fall back to `fallback`.
fn sink<'a>(path: &Option<PathBuf>, fallback: &'a mut dyn Write) -> Result<Box<dyn Write + 'a>, CliError> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(fallback),
    })
}

pub const SWEEP_HEADER: &str = "zeta_n,N,phi_f,phi_E,infidelity,phi_series,infid_series";
pub const CONTRACTION_HEADER: &str = "N,phi_f,abs_err_phi,overlap,abs_err_overlap,prefactor";

/// `steps` evenly spaced values from `min` to `max` inclusive.
pub fn linspace(min: f64, max: f64, steps: usize) -> Vec<f64> {
    match steps {
        0 => Vec::new(),
        1 => vec![min],
        _ => (0..steps).map(|k| min + (max - min) * k as f64 / (steps - 1) as f64).collect(),
    }
}

/// CSV rows for the sweep, ordered by `(ζ_n, N)`.
pub fn sweep_rows(zetas: &[f64], sizes: &[EnsembleSize]) -> Vec<String> {
    let grid: Vec<(f64, EnsembleSize)> = zetas.iter().flat_map(|&z| sizes.iter().map(move |&n| (z, n))).collect();
    grid.par_iter()
        .map(|&(z, n)| {
            let p = fan_error(z, n);
            format!("{:.11e},{},{:.11e},{:.11e},{:.11e},{:.11e},{:.11e}", z, n.get(), p.phi_f, p.phi_e, p.infidelity, p.phi_series, p.infid_series)
        })
        .collect()
}

fn cmd_sweep(args: &SweepArgs, out: &mut dyn Write) -> Result<(), CliError> {
    if args.zeta_steps == 0 || args.n_list.is_empty() {
        return Err(CliError::Usage("sweep needs at least one zeta value and one ensemble size".into()));
    }
    if !(args.zeta_min > 0.0 && args.zeta_max >= args.zeta_min && args.zeta_max.is_finite()) {
        return Err(CliError::Usage("need 0 < zeta-min <= zeta-max".into()));
    }
    let sizes = args.n_list.iter().map(|&n| EnsembleSize::new(n)).collect::<crate::Result<Vec<_>>>()?;
    let rows = sweep_rows(&linspace(args.zeta_min, args.zeta_max, args.zeta_steps), &sizes);
    let mut w = sink(&args.out, out)?;
    writeln!(w, "{SWEEP_HEADER}")?;
    for row in rows {
        writeln!(w, "{row}")?;
    }
    w.flush()?;
    Ok(())
}

fn cmd_contraction(args: &ContractionArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let sizes = doubling_sizes(args.n_min, args.n_max)?;
    let rows = contraction_probe(Complex64::new(args.zeta, args.zeta_im), &sizes)?;
    let mut w = sink(&args.out, out)?;
    writeln!(w, "{CONTRACTION_HEADER}")?;
    for r in rows {
        writeln!(
            w,
            "{},{:.11e},{:.11e},{:.11e},{:.11e},{:.11e}",
            r.n_spins.get(),
            r.phi_f,
            r.abs_err_phi,
            r.overlap,
            r.abs_err_overlap,
            r.prefactor
        )?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_to_string(args: &[&str]) -> Result<String, CliError> {
        let cli = Cli::try_parse_from(std::iter::once("amqc").chain(args.iter().copied())).map_err(|e| CliError::Usage(e.to_string()))?;
        let mut buf = Vec::new();
        execute(cli, &mut buf, Style { color: false })?;
        Ok(String::from_utf8(buf).unwrap())
    }

    #[test]
    fn size_parser() {
        assert_eq!(parse_size("1e7"), Ok(10_000_000));
        assert_eq!(parse_size("128"), Ok(128));
        assert!(parse_size("0").is_err());
        assert!(parse_size("1.5").is_err());
        assert!(parse_size("x").is_err());
    }

    #[test]
    fn linspace_endpoints() {
        assert_eq!(linspace(1.0, 50.0, 50)[49], 50.0);
        assert_eq!(linspace(2.0, 9.0, 1), vec![2.0]);
    }

    #[test]
    fn sweep_endpoint_row() {
        let text = run_to_string(&["sweep", "--zeta-min", "40", "--zeta-max", "40", "--zeta-steps", "1", "--n-list", "1e7"]).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some(SWEEP_HEADER));
        let fields: Vec<f64> = lines.next().unwrap().split(',').map(|f| f.parse().unwrap()).collect();
        assert_eq!(fields[1], 1e7);
        assert!((fields[3] - 1.6e-4).abs() < 0.01e-4);
        assert!((fields[4] - 4.1e-5).abs() < 0.01e-5);
    }

    #[test]
    fn sweep_rows_are_ordered() {
        let sizes = [EnsembleSize::new(100).unwrap(), EnsembleSize::new(1000).unwrap()];
        let rows = sweep_rows(&[1.0, 2.0], &sizes);
        let keys: Vec<(String, String)> = rows
            .iter()
            .map(|r| {
                let f: Vec<&str> = r.split(',').collect();
                (f[0].to_string(), f[1].to_string())
            })
            .collect();
        assert_eq!(keys[0].1, "100");
        assert_eq!(keys[1].1, "1000");
        assert!(keys[2].0.starts_with("2.0"));
    }

    #[test]
    fn contraction_table() {
        let text = run_to_string(&["contraction", "--zeta", "1", "--zeta-im", "1", "--n-min", "1000", "--n-max", "8000"]).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], CONTRACTION_HEADER);
        assert_eq!(lines.len(), 5);
        assert!(lines[4].starts_with("8000,"));
    }

    #[test]
    fn usage_errors_map_to_two() {
        assert_eq!(run_to_string(&["sweep", "--zeta-steps", "0"]).unwrap_err().exit_code(), 2);
        assert_eq!(run_to_string(&["contraction", "--n-min", "10", "--n-max", "5"]).unwrap_err().exit_code(), 2);
        assert_eq!(CliError::Io(io::Error::other("x")).exit_code(), 1);
    }
}
