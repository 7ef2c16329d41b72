//! Command-line front end: argument parsing and the five subcommands.
//!
//! Data documents go to `--output` when given, otherwise to `out`. Summary
//! lines go to `log`. Every command returns whether its asserted tolerances
//! held; the binary maps that onto the exit code.

use std::fs::File;
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::angles::{ComplexAngleTree, EncodingMode};
use crate::bbqram::{CellEncoding, MemoryImage};
use crate::fixedpoint;
use crate::matrix::{load_matrix, ComplexMatrix, Format};
use crate::random;
use crate::sim::{prepare, prepare_matrix, SimMode};
use crate::verify::{
    error_bound, image_target_state, oracle_state, precision_for, precision_sweep,
    resource_report, state_error, sweep_csv,
};
use crate::{example, Error, Result};

/// Error slack allowed over the analytic bound in fixed-point runs.
pub const BOUND_SLACK: f64 = 4.0;
/// Error tolerance for ideal runs and for images checked against themselves.
pub const IDEAL_TOL: f64 = 1e-10;
/// Random matrix size used when `--seed` is given without `--K`.
pub const DEFAULT_RANDOM_SIZE: u64 = 16;

/// A single precision or an inclusive `LO:HI` range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Precision {
    Single(u32),
    Range(u32, u32),
}

impl Precision {
    pub fn values(self) -> Vec<u32> {
        match self {
            Precision::Single(t) => vec![t],
            Precision::Range(lo, hi) => (lo..=hi).collect(),
        }
    }

    /// The single value, or the top of a range.
    pub fn max(self) -> u32 {
        match self {
            Precision::Single(t) | Precision::Range(_, t) => t,
        }
    }

    fn validate(self) -> Result<Self> {
        for t in [self.max(), self.values()[0]] {
            fixedpoint::check_precision(t)?;
        }
        Ok(self)
    }
}

impl FromStr for Precision {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let num = |x: &str| {
            x.trim().parse::<u32>().map_err(|_| Error::Parse(format!("precision {s:?}")))
        };
        let p = match s.split_once(':') {
            Some((lo, hi)) => {
                let (lo, hi) = (num(lo)?, num(hi)?);
                if lo > hi {
                    return Err(Error::Parse(format!("empty precision range {s:?}")));
                }
                Precision::Range(lo, hi)
            }
            None => Precision::Single(num(s)?),
        };
        p.validate()
    }
}

impl std::fmt::Display for Precision {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Precision::Single(t) => write!(f, "{t}"),
            Precision::Range(lo, hi) => write!(f, "{lo}:{hi}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Prepare,
    Sweep,
    Resources,
    Example,
    Preprocess,
}

/// Everything one run needs.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub input: Option<PathBuf>,
    pub output: Option<PathBuf>,
    pub t: Precision,
    pub mode: EncodingMode,
    pub sim: SimMode,
    pub size: Option<u64>,
    pub seed: Option<u64>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            input: None,
            output: None,
            t: Precision::Single(12),
            mode: EncodingMode::Complex,
            sim: SimMode::Fixed,
            size: None,
            seed: None,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "bbqram", version, about = "Amplitude encoding of complex matrices through a simulated BBQRAM")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Build the angle tree and write the memory image JSON.
    Preprocess(CliArgs),
    /// Run the preparation and compare against the oracle state.
    Prepare(CliArgs),
    /// Measured error and analytic bound over a range of precisions (CSV).
    Sweep(CliArgs),
    /// Closed-form qubit, memory and query counts (JSON).
    Resources(CliArgs),
    /// Replay the 2x4 worked example with a pass/fail transcript.
    Example(CliArgs),
}

#[derive(Debug, Args)]
pub struct CliArgs {
    /// Matrix (.json or .csv) or memory image (.json) to read.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Destination for the data document; standard output if absent.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Fixed-point precision N, or an inclusive range LO:HI.
    #[arg(long, default_value = "12")]
    pub t: Precision,
    /// complex or real_signed.
    #[arg(long, default_value = "complex")]
    pub mode: EncodingMode,
    /// fixed or ideal.
    #[arg(long, default_value = "fixed")]
    pub sim: SimMode,
    /// Number of padded entries, a power of two.
    #[arg(long = "K")]
    pub size: Option<u64>,
    /// Seed for a random input matrix when no --input is given.
    #[arg(long)]
    pub seed: Option<u64>,
}

impl From<Cli> for RunConfig {
    fn from(cli: Cli) -> Self {
        let (command, a) = match cli.command {
            CliCommand::Preprocess(a) => (Command::Preprocess, a),
            CliCommand::Prepare(a) => (Command::Prepare, a),
            CliCommand::Sweep(a) => (Command::Sweep, a),
            CliCommand::Resources(a) => (Command::Resources, a),
            CliCommand::Example(a) => (Command::Example, a),
        };
        RunConfig {
            command,
            input: a.input,
            output: a.output,
            t: a.t,
            mode: a.mode,
            sim: a.sim,
            size: a.size,
            seed: a.seed,
        }
    }
}

/// Either kind of input document.
#[derive(Debug, Clone)]
pub enum Input {
    Matrix(ComplexMatrix),
    Image(MemoryImage),
}

fn is_image_document(text: &str) -> bool {
    serde_json::from_str::<serde_json::Value>(text)
        .map(|v| v.get("cells").is_some())
        .unwrap_or(false)
}

/// Reads `--input`, or draws a seeded random matrix of `--K` entries.
pub fn load_input(cfg: &RunConfig) -> Result<Input> {
    if let Some(path) = &cfg.input {
        let format = Format::from_path(path);
        if format == Format::Json {
            let text = std::fs::read_to_string(path)?;
            if is_image_document(&text) {
                return Ok(Input::Image(MemoryImage::from_json(&text)?));
            }
            return Ok(Input::Matrix(load_matrix(text.as_bytes(), format)?));
        }
        return Ok(Input::Matrix(load_matrix(BufReader::new(File::open(path)?), format)?));
    }
    let Some(seed) = cfg.seed else {
        return Err(Error::InvalidDimensions("no --input given and no --seed to draw one".into()));
    };
    let size = cfg.size.unwrap_or(DEFAULT_RANDOM_SIZE);
    if size < 2 || !size.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(size as usize));
    }
    let (rows, cols) = random::square_shape(size as usize);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(Input::Matrix(match cfg.mode {
        EncodingMode::Complex => random::random_complex(&mut rng, rows, cols, 0.0),
        EncodingMode::RealSigned => random::random_real(&mut rng, rows, cols, 0.0),
    }))
}

fn load_matrix_input(cfg: &RunConfig) -> Result<ComplexMatrix> {
    match load_input(cfg)? {
        Input::Matrix(m) => Ok(m),
        Input::Image(_) => Err(Error::Parse("expected a matrix, found a memory image".into())),
    }
}

fn emit(cfg: &RunConfig, out: &mut dyn Write, document: &str) -> Result<()> {
    match &cfg.output {
        Some(path) => write_file(path, document),
        None => {
            out.write_all(document.as_bytes())?;
            if !document.ends_with('\n') {
                out.write_all(b"\n")?;
            }
            Ok(())
        }
    }
}

fn write_file(path: &Path, document: &str) -> Result<()> {
    let mut f = File::create(path)?;
    f.write_all(document.as_bytes())?;
    if !document.ends_with('\n') {
        f.write_all(b"\n")?;
    }
    Ok(())
}

fn single_precision(cfg: &RunConfig) -> Result<u32> {
    match cfg.t {
        Precision::Single(t) => Ok(t),
        Precision::Range(..) => Err(Error::Parse("this command takes a single --t".into())),
    }
}

/// Dispatches on `cfg.command`. `Ok(false)` means a tolerance check failed.
pub fn run(cfg: &RunConfig, out: &mut dyn Write, log: &mut dyn Write) -> Result<bool> {
    match cfg.command {
        Command::Preprocess => cmd_preprocess(cfg, out, log),
        Command::Prepare => cmd_prepare(cfg, out, log),
        Command::Sweep => cmd_sweep(cfg, out, log),
        Command::Resources => cmd_resources(cfg, out, log),
        Command::Example => cmd_example(out),
    }
}

pub fn cmd_preprocess(cfg: &RunConfig, out: &mut dyn Write, log: &mut dyn Write) -> Result<bool> {
    let m = load_matrix_input(cfg)?;
    let t = single_precision(cfg)?;
    let gamma = ComplexAngleTree::build(&m, cfg.mode)?;
    let image = MemoryImage::from_tree(&gamma, CellEncoding::fixed(t)?)?;
    emit(cfg, out, &image.to_json()?)?;
    writeln!(log, "mode {}", cfg.mode.name())?;
    writeln!(log, "cells {}", image.len())?;
    writeln!(log, "cell_width_bits {}", image.width())?;
    writeln!(log, "memory_bits {}", image.memory_bits())?;
    writeln!(log, "preprocessing_ops {}", gamma.preprocessing_ops())?;
    Ok(true)
}

pub fn cmd_prepare(cfg: &RunConfig, out: &mut dyn Write, log: &mut dyn Write) -> Result<bool> {
    let (run, oracle, tol) = match load_input(cfg)? {
        Input::Matrix(m) => {
            let t = single_precision(cfg)?;
            let run = prepare_matrix(&m, cfg.mode, cfg.sim, t)?;
            let tol = match cfg.sim {
                SimMode::Fixed => BOUND_SLACK * error_bound(m.address_bits(), t),
                SimMode::Ideal => IDEAL_TOL,
            };
            (run, oracle_state(&m)?, tol)
        }
        Input::Image(image) => (prepare(&image)?, image_target_state(&image)?, IDEAL_TOL),
    };
    let err = state_error(&run.state, &oracle)?;
    let pass = err <= tol;
    emit(cfg, out, &run.state.to_json()?)?;
    writeln!(log, "query_count {}", run.ledger.query_count())?;
    writeln!(log, "routing_time {}", run.ledger.routing_time())?;
    writeln!(log, "state_error {err:e}")?;
    writeln!(log, "tolerance {tol:e}")?;
    writeln!(log, "status {}", if pass { "pass" } else { "fail" })?;
    Ok(pass)
}

pub fn cmd_sweep(cfg: &RunConfig, out: &mut dyn Write, log: &mut dyn Write) -> Result<bool> {
    let m = load_matrix_input(cfg)?;
    let rows = precision_sweep(&m, cfg.mode, &cfg.t.values())?;
    emit(cfg, out, &sweep_csv(&rows))?;
    let k = m.address_bits();
    for eta in [1e-3, 1e-6] {
        match precision_for(k, eta) {
            Some(t) => writeln!(log, "t_eta({eta:e}) {t}")?,
            None => writeln!(log, "t_eta({eta:e}) unreachable")?,
        }
    }
    let pass = rows.iter().all(|r| r.measured_error <= BOUND_SLACK * r.bound);
    writeln!(log, "status {}", if pass { "pass" } else { "fail" })?;
    Ok(pass)
}

pub fn cmd_resources(cfg: &RunConfig, out: &mut dyn Write, _log: &mut dyn Write) -> Result<bool> {
    let size = match (cfg.size, &cfg.input) {
        (Some(size), _) => size,
        (None, Some(_)) => load_matrix_input(cfg)?.len() as u64,
        (None, None) => return Err(Error::InvalidDimensions("resources needs --K or --input".into())),
    };
    let report = resource_report(size, single_precision(cfg)?, cfg.mode)?;
    emit(cfg, out, &report.to_json())?;
    Ok(true)
}

pub fn cmd_example(out: &mut dyn Write) -> Result<bool> {
    example::replay(out)?;
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(cfg: &RunConfig) -> (Result<bool>, String, String) {
        let (mut out, mut log) = (Vec::new(), Vec::new());
        let r = run(cfg, &mut out, &mut log);
        (r, String::from_utf8(out).unwrap(), String::from_utf8(log).unwrap())
    }

    fn example_path() -> PathBuf {
        Path::new(env!("CARGO_MANIFEST_DIR")).join("data/example_matrix.json")
    }

    #[test]
    fn precision_parsing() {
        assert_eq!("12".parse::<Precision>().unwrap(), Precision::Single(12));
        assert_eq!("6:16".parse::<Precision>().unwrap().values().len(), 11);
        assert!("1".parse::<Precision>().is_err());
        assert!("9:4".parse::<Precision>().is_err());
        assert!("x".parse::<Precision>().is_err());
        assert!("2:63".parse::<Precision>().is_err());
    }

    #[test]
    fn clap_flags() {
        let cli = Cli::try_parse_from([
            "bbqram", "prepare", "--t", "8", "--mode", "real_signed", "--sim", "ideal", "--K", "64",
            "--seed", "3",
        ])
        .unwrap();
        let cfg = RunConfig::from(cli);
        assert_eq!(cfg.command, Command::Prepare);
        assert_eq!(cfg.t, Precision::Single(8));
        assert_eq!(cfg.mode, EncodingMode::RealSigned);
        assert_eq!(cfg.sim, SimMode::Ideal);
        assert_eq!((cfg.size, cfg.seed), (Some(64), Some(3)));
        assert!(Cli::try_parse_from(["bbqram", "prepare", "--mode", "quaternion"]).is_err());
    }

    #[test]
    fn prepare_example_ideal_and_fixed() {
        let mut cfg = RunConfig::new(Command::Prepare);
        cfg.input = Some(example_path());
        cfg.t = Precision::Single(24);
        cfg.sim = SimMode::Ideal;
        let (r, out, log) = run_capture(&cfg);
        assert!(r.unwrap());
        assert!(log.contains("query_count 8\n"));
        assert!(log.contains("routing_time 24\n"));
        let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(doc["branches"].as_array().unwrap().len(), 8);

        cfg.sim = SimMode::Fixed;
        cfg.t = Precision::Single(8);
        assert!(run_capture(&cfg).0.unwrap());
    }

    #[test]
    fn preprocess_then_prepare_image() {
        let dir = std::env::temp_dir().join(format!("bbqram-cli-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let image_path = dir.join("image.json");
        let mut cfg = RunConfig::new(Command::Preprocess);
        cfg.input = Some(example_path());
        cfg.output = Some(image_path.clone());
        let (r, _, log) = run_capture(&cfg);
        assert!(r.unwrap());
        assert!(log.contains("preprocessing_ops 15\n"));
        assert!(log.contains("cells 8\n"));

        let mut cfg = RunConfig::new(Command::Prepare);
        cfg.input = Some(image_path);
        let (r, _, log) = run_capture(&cfg);
        assert!(r.unwrap(), "{log}");
        std::fs::remove_dir_all(dir).ok();
    }

    #[test]
    fn real_signed_rejects_complex_input() {
        let mut cfg = RunConfig::new(Command::Preprocess);
        cfg.input = Some(example_path());
        cfg.mode = EncodingMode::RealSigned;
        assert!(matches!(run_capture(&cfg).0, Err(Error::NotRealMatrix(_))));
    }

    #[test]
    fn resources_table_row() {
        let mut cfg = RunConfig::new(Command::Resources);
        cfg.size = Some(1 << 20);
        cfg.t = Precision::Single(32);
        let (r, out, _) = run_capture(&cfg);
        assert!(r.unwrap());
        let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(doc["qpu_qubits"], 85);
        assert_eq!(doc["query_count"], 42);
        cfg.size = Some(1000);
        assert!(matches!(run_capture(&cfg).0, Err(Error::NotPowerOfTwo(1000))));
    }

    #[test]
    fn sweep_rows_and_determinism() {
        let mut cfg = RunConfig::new(Command::Sweep);
        cfg.input = Some(example_path());
        cfg.t = "6:16".parse().unwrap();
        let (r, first, _) = run_capture(&cfg);
        assert!(r.unwrap());
        assert_eq!(first.lines().count(), 12);
        let (_, second, _) = run_capture(&cfg);
        assert_eq!(first, second);
    }

    #[test]
    fn seeded_random_input() {
        let mut cfg = RunConfig::new(Command::Prepare);
        cfg.seed = Some(7);
        cfg.size = Some(32);
        let (r, a, log) = run_capture(&cfg);
        assert!(r.unwrap());
        assert!(log.contains("query_count 12\n"));
        assert_eq!(a, run_capture(&cfg).1);
        cfg.seed = None;
        assert!(run_capture(&cfg).0.is_err());
    }
}
