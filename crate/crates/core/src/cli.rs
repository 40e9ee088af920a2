//! `bellwig` command-line front end.
//!
//! Exit codes: `0` success with every evaluated inequality satisfied, `1` a
//! violation was found, `2` bad input or I/O failure.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::analytic::{
    bell_correlation, bell_margin, joint_probability, third_correlation, third_pair_probabilities,
    wigner_margin, wigner_slack,
};
use crate::data_inequality::{data_bell_margin_3_with, data_bell_margin_4, TripleSums};
use crate::dataset_csv::{read_data_file, write_triples_file, DataFile};
use crate::exec::Executor;
use crate::sampler::{convergence_study, sample_dataset, DEFAULT_SEED};
use crate::sweep::{grid_sweep, grid_sweep_streaming, SweepKind, SweepSummary};
use crate::types::{std_error, AngleConfig, AngleConvention, InequalityReport, TheoryMode};
use crate::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug, Clone)]
#[command(name = "bellwig", version, about = "Bell and Wigner inequality verification toolkit")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct AngleArgs {
    /// Detector settings a,b,bp (radians unless --degrees)
    #[arg(long, value_delimiter = ',', num_args = 1, required = true, allow_hyphen_values = true)]
    pub angles: Vec<f64>,

    /// Interpret --angles in degrees
    #[arg(long)]
    pub degrees: bool,

    #[arg(long, value_enum, default_value_t = AngleConvention::Spin)]
    pub convention: AngleConvention,
}

impl AngleArgs {
    pub fn config(&self) -> std::result::Result<AngleConfig, String> {
        let [a, b, bp] = self.angles[..] else {
            return Err(format!("--angles needs exactly 3 values, got {}", self.angles.len()));
        };
        let cfg = if self.degrees {
            AngleConfig::from_degrees(a, b, bp, self.convention)
        } else {
            AngleConfig::new(a, b, bp, self.convention)
        };
        cfg.map_err(|e| e.to_string())
    }
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Evaluate the exact data inequality on a CSV file of outcomes
    CheckData {
        /// CSV with header a,b,bp or a,ap,b,bp
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Sample triples, write them as CSV and print a JSON summary
    Simulate {
        #[command(flatten)]
        angles: AngleArgs,
        #[arg(long, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Output CSV path for the sampled triples
        #[arg(long)]
        out: PathBuf,
    },
    /// Closed-form probabilities, correlations and inequality margins
    Analytic {
        #[command(flatten)]
        angles: AngleArgs,
        #[arg(long, value_enum, default_value_t = TheoryMode::Paper)]
        mode: TheoryMode,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Evaluate an inequality over a uniform angle grid
    Sweep {
        #[arg(long, default_value_t = 60)]
        resolution: usize,
        #[arg(long, value_enum, default_value_t = AngleConvention::Spin)]
        convention: AngleConvention,
        #[arg(long, value_enum, default_value_t = SweepKind::Wigner)]
        kind: SweepKind,
        #[arg(long, value_enum, default_value_t = TheoryMode::Paper)]
        mode: TheoryMode,
        /// Write every grid point as CSV here (`-` for stdout)
        #[arg(long)]
        out: Option<PathBuf>,
        /// Summary format: `csv` prints `key: value` lines, `json` an object
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Third-pair correlation error against sample size
    Convergence {
        #[command(flatten)]
        angles: AngleArgs,
        /// Ascending sample sizes
        #[arg(long, value_delimiter = ',', default_value = "100,10000,1000000")]
        n: Vec<usize>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

/// Failure that maps to exit code 2.
#[derive(Debug)]
pub struct InputError(pub String);

impl From<Error> for InputError {
    fn from(e: Error) -> Self {
        InputError(e.to_string())
    }
}

impl From<std::io::Error> for InputError {
    fn from(e: std::io::Error) -> Self {
        InputError(e.to_string())
    }
}

type CmdResult = std::result::Result<i32, InputError>;

/// Runs one command and returns its exit code. Diagnostics go to `err`.
pub fn run(config: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let exec = Executor::from_env();
    let result = match &config.command {
        Command::CheckData { input, format } => cmd_check_data(input, *format, out),
        Command::Simulate { angles, n, seed, out: path } => angles
            .config()
            .map_err(InputError)
            .and_then(|cfg| cmd_simulate(&cfg, *n as usize, *seed, path, &exec, out)),
        Command::Analytic { angles, mode, format } => angles
            .config()
            .map_err(InputError)
            .and_then(|cfg| cmd_analytic(&cfg, *mode, *format, out)),
        Command::Sweep { resolution, convention, kind, mode, out: path, format } => {
            cmd_sweep(*resolution, *convention, *kind, *mode, path.as_deref(), *format, &exec, out, err)
        }
        Command::Convergence { angles, n, seed, out: path, format } => angles
            .config()
            .map_err(InputError)
            .and_then(|cfg| cmd_convergence(&cfg, n, *seed, path.as_deref(), *format, &exec, out)),
    };
    match result {
        Ok(code) => code,
        Err(InputError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
    }
}

fn exit_for(reports: &[&InequalityReport]) -> i32 {
    if reports.iter().all(|r| r.satisfied) {
        EXIT_OK
    } else {
        EXIT_VIOLATION
    }
}

fn write_report_csv(out: &mut dyn Write, r: &InequalityReport) -> std::io::Result<()> {
    writeln!(out, "kind,mode,lhs,rhs,margin,satisfied,tolerance")?;
    writeln!(out, "{},{},{},{},{},{},{}", r.kind, r.mode, r.lhs, r.rhs, r.margin, r.satisfied, r.tolerance)
}

fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)
}

pub fn cmd_check_data(input: &Path, format: Format, out: &mut dyn Write) -> CmdResult {
    let exec = Executor::from_env();
    let report = match read_data_file(input)? {
        DataFile::Triples(d) => data_bell_margin_3_with(&d, &exec),
        DataFile::Quads(q) => data_bell_margin_4(&q)?,
    };
    match format {
        Format::Json => write_json(out, &report)?,
        Format::Csv => write_report_csv(out, &report)?,
    }
    Ok(exit_for(&[&report]))
}

pub fn cmd_simulate(
    cfg: &AngleConfig,
    n: usize,
    seed: u64,
    path: &Path,
    exec: &Executor,
    out: &mut dyn Write,
) -> CmdResult {
    let data = sample_dataset(cfg, n, seed, exec)?;
    write_triples_file(path, data.trials())?;
    let sums = TripleSums::of_with(data.trials(), exec);
    let report = data_bell_margin_3_with(&data, exec);
    let n64 = n as u64;
    let corr = |estimate: f64, analytic: f64| {
        json!({ "estimate": estimate, "analytic": analytic, "std_error": std_error(estimate, n64) })
    };
    let summary = json!({
        "config": cfg,
        "n": n,
        "seed": seed,
        "output": path.display().to_string(),
        "correlations": {
            "ab": corr(sums.correlation_ab(), bell_correlation(cfg.a, cfg.b, cfg.convention)),
            "abp": corr(sums.correlation_abp(), bell_correlation(cfg.a, cfg.bp, cfg.convention)),
            "bbp": corr(sums.correlation_bbp(), third_correlation(cfg)),
        },
        "naive_bbp": -bell_correlation(cfg.b, cfg.bp, cfg.convention),
        "data_inequality": report,
    });
    write_json(out, &summary)?;
    Ok(exit_for(&[&report]))
}

pub fn cmd_analytic(cfg: &AngleConfig, mode: TheoryMode, format: Format, out: &mut dyn Write) -> CmdResult {
    let conv = cfg.convention;
    let joint_ab = joint_probability(cfg.a, cfg.b, conv);
    let joint_abp = joint_probability(cfg.a, cfg.bp, conv);
    let (ppp, ppm) = third_pair_probabilities(cfg);
    let bell = bell_margin(cfg, mode);
    let wigner = wigner_margin(cfg, mode);
    let slack = wigner_slack(cfg);
    let c_ab = bell_correlation(cfg.a, cfg.b, conv);
    let c_abp = bell_correlation(cfg.a, cfg.bp, conv);
    let c_bbp = third_correlation(cfg);
    match format {
        Format::Json => write_json(
            out,
            &json!({
                "config": cfg,
                "mode": mode,
                "joint_ab": joint_ab,
                "joint_abp": joint_abp,
                "third_pair": { "ppp": ppp, "ppm": ppm },
                "correlations": { "ab": c_ab, "abp": c_abp, "bbp": c_bbp },
                "bell": bell,
                "wigner": wigner,
                "wigner_slack": slack,
            }),
        )?,
        Format::Csv => {
            writeln!(out, "quantity,value")?;
            let rows = [
                ("p_ab_pp", joint_ab.pp),
                ("p_ab_pm", joint_ab.pm),
                ("p_abp_pp", joint_abp.pp),
                ("p_abp_pm", joint_abp.pm),
                ("p_bbp_pp", ppp),
                ("p_bbp_pm", ppm),
                ("c_ab", c_ab),
                ("c_abp", c_abp),
                ("c_bbp", c_bbp),
                ("bell_lhs", bell.lhs),
                ("bell_rhs", bell.rhs),
                ("bell_margin", bell.margin),
                ("wigner_lhs", wigner.lhs),
                ("wigner_rhs", wigner.rhs),
                ("wigner_margin", wigner.margin),
                ("wigner_slack", slack),
            ];
            for (k, v) in rows {
                writeln!(out, "{k},{v}")?;
            }
        }
    }
    Ok(exit_for(&[&bell, &wigner]))
}

const SWEEP_HEADER: &str = "a,b,bp,kind,mode,lhs,rhs,margin";

#[allow(clippy::too_many_arguments)]
pub fn cmd_sweep(
    resolution: usize,
    convention: AngleConvention,
    kind: SweepKind,
    mode: TheoryMode,
    path: Option<&Path>,
    format: Format,
    exec: &Executor,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CmdResult {
    let to_stdout = path.is_some_and(|p| p.as_os_str() == "-");
    let summary = match path {
        None => grid_sweep(resolution, convention, kind, mode, exec)?,
        Some(_) if to_stdout => {
            writeln!(out, "{SWEEP_HEADER}")?;
            let s = grid_sweep_streaming(resolution, convention, kind, mode, exec, |r| {
                writeln!(out, "{},{},{},{},{},{},{},{}", r.a, r.b, r.bp, r.kind, r.mode, r.lhs, r.rhs, r.margin)
            })?;
            out.flush()?;
            s
        }
        Some(p) => {
            let io = |source| Error::Io { path: p.to_path_buf(), source };
            let mut w = BufWriter::new(File::create(p).map_err(io)?);
            writeln!(w, "{SWEEP_HEADER}").map_err(io)?;
            let s = grid_sweep_streaming(resolution, convention, kind, mode, exec, |r| {
                writeln!(w, "{},{},{},{},{},{},{},{}", r.a, r.b, r.bp, r.kind, r.mode, r.lhs, r.rhs, r.margin)
            })?;
            w.flush().map_err(io)?;
            s
        }
    };
    let sink: &mut dyn Write = if to_stdout { err } else { out };
    write_sweep_summary(sink, &summary, format)?;
    Ok(if summary.violations > 0 { EXIT_VIOLATION } else { EXIT_OK })
}

fn write_sweep_summary(w: &mut dyn Write, s: &SweepSummary, format: Format) -> std::io::Result<()> {
    match format {
        Format::Json => write_json(w, s),
        Format::Csv => {
            writeln!(w, "kind: {} mode: {} convention: {} resolution: {}", s.kind, s.mode, s.convention, s.resolution)?;
            writeln!(w, "violations: {}", s.violations)?;
            writeln!(w, "min_margin: {}", s.min_margin)?;
            writeln!(w, "argmin: a={},b={},bp={}", s.argmin.a, s.argmin.b, s.argmin.bp)
        }
    }
}

pub fn cmd_convergence(
    cfg: &AngleConfig,
    n_list: &[usize],
    seed: u64,
    path: Option<&Path>,
    format: Format,
    exec: &Executor,
    out: &mut dyn Write,
) -> CmdResult {
    let steps = convergence_study(cfg, n_list, seed, exec)?;
    let mut file;
    let w: &mut dyn Write = match path {
        Some(p) => {
            file = BufWriter::new(File::create(p).map_err(|source| Error::Io { path: p.to_path_buf(), source })?);
            &mut file
        }
        None => out,
    };
    match format {
        Format::Json => write_json(w, &steps)?,
        Format::Csv => {
            writeln!(w, "n_samples,estimate,analytic,abs_error,std_error,seed,corr_ab,corr_abp,data_margin")?;
            for s in &steps {
                let r = &s.record;
                writeln!(
                    w,
                    "{},{},{},{},{},{},{},{},{}",
                    r.n_samples, r.estimate, r.analytic, r.abs_error, r.std_error, r.seed, s.corr_ab, s.corr_abp, s.data_report.margin
                )?;
            }
        }
    }
    w.flush()?;
    Ok(EXIT_OK)
}

/// Parses `args` (including the program name) and runs the command.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(cfg) => run(&cfg, out, err),
        Err(e) => {
            let _ = write!(err, "{e}");
            if e.use_stderr() {
                EXIT_INPUT
            } else {
                EXIT_OK
            }
        }
    }
}
