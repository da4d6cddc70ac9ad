//! Command-line front end.
//!
//! Exit codes: 0 success or PASS, 1 failed hypothesis or FAIL verdict,
//! 2 usage or parse error. Results go to stdout; diagnostics go to stderr.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use phaseforge_core::equiv::verify_equivalence;
use phaseforge_core::phtype::{cph_cdf, cph_pdf, cph_tpm, dph_cdf, dph_pmf, dph_tpm, ph_mean};
use phaseforge_core::scenarios::{continuous_example, student_dynamics, supply_chain, StudentRates, SupplyRates};
use phaseforge_core::xform::{transform, TransformResult};
use phaseforge_core::{Kind, PhaseType, Realization};
use serde_json::json;

use crate::docs::{RealizationDocument, TransformDocument};
use crate::error::CliError;
use crate::format::csv_number;
use crate::grid::{integer_points, parse_grid};
use crate::sampling::par_sample;

#[derive(Debug, Parser)]
#[command(
    name = "phaseforge",
    version,
    about = "Positive linear systems as phase-type distributions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Scenario {
    Student,
    SupplyChain,
    ContinuousExample,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Quantity {
    Pdf,
    Cdf,
    Pmf,
    Tpm,
    Mean,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, clap::Args)]
pub struct SystemSource {
    /// Realization document (JSON).
    #[arg(long, conflicts_with = "scenario")]
    pub input: Option<PathBuf>,
    /// Built-in scenario.
    #[arg(long, value_enum)]
    pub scenario: Option<Scenario>,
    /// Rate overrides for a scenario, e.g. `xi1=0.7,beta1=0.1`.
    #[arg(long, requires = "scenario")]
    pub rates: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the hypotheses of a realization document.
    Check {
        #[arg(long)]
        input: PathBuf,
    },
    /// Transform a realization into its phase-type representation.
    Convert {
        #[command(flatten)]
        source: SystemSource,
        #[arg(long, value_enum, default_value = "json")]
        format: OutputFormat,
    },
    /// Evaluate a transformed distribution on a grid.
    Eval {
        /// Transform document produced by `convert`.
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        what: Quantity,
        /// `start:stop:step`, `a..b` or a comma-separated list.
        #[arg(long, default_value = "0..10")]
        grid: String,
        /// Use the unnormalized initial vector (point mass `1 - psi` at zero).
        #[arg(long)]
        raw_alpha: bool,
    },
    /// Draw absorption times.
    Simulate {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        samples: usize,
        #[arg(long, env = "PHASEFORGE_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        raw_alpha: bool,
        /// Write the summary JSON here instead of stderr.
        #[arg(long)]
        summary: Option<PathBuf>,
    },
    /// Compare the system output with `psi * u * F(t)`.
    Compare {
        #[command(flatten)]
        source: SystemSource,
        /// Use this transform document instead of transforming in process.
        #[arg(long)]
        transform: Option<PathBuf>,
        /// Constant input level.
        #[arg(long)]
        u: f64,
        /// Time grid: `a..b`, `start:stop:step` or a comma list.
        #[arg(long)]
        grid: String,
    },
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

fn parse_rates(spec: &str) -> Result<Vec<(String, f64)>, CliError> {
    spec.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|kv| {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("rate override '{kv}' is not key=value")))?;
            let v = v
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("rate '{k}' is not a number")))?;
            Ok((k.trim().to_string(), v))
        })
        .collect()
}

/// Builds a scenario realization with optional `key=value` overrides.
pub fn scenario_realization(s: Scenario, rates: Option<&str>) -> Result<Realization, CliError> {
    let overrides = rates.map(parse_rates).transpose()?.unwrap_or_default();
    let usage = |e: phaseforge_core::Error| CliError::Usage(e.to_string());
    match s {
        Scenario::Student => {
            let mut r = StudentRates::default();
            for (k, v) in &overrides {
                r.set(k, *v).map_err(usage)?;
            }
            student_dynamics(&r).map_err(usage)
        }
        Scenario::SupplyChain => {
            let mut r = SupplyRates::default();
            for (k, v) in &overrides {
                r.set(k, *v).map_err(usage)?;
            }
            supply_chain(&r).map_err(usage)
        }
        Scenario::ContinuousExample => {
            if !overrides.is_empty() {
                return Err(CliError::Usage("continuous-example takes no rate overrides".into()));
            }
            Ok(continuous_example())
        }
    }
}

fn load_system(src: &SystemSource) -> Result<Realization, CliError> {
    match (&src.input, src.scenario) {
        (Some(path), None) => RealizationDocument::parse(&read(path)?)?.to_realization(),
        (None, Some(s)) => scenario_realization(s, src.rates.as_deref()),
        _ => Err(CliError::Usage("give exactly one of --input or --scenario".into())),
    }
}

fn load_transform(path: &Path) -> Result<TransformResult, CliError> {
    TransformDocument::parse(&read(path)?)?.to_result()
}

fn distribution(tr: &TransformResult, raw_alpha: bool, err: &mut dyn Write) -> Result<PhaseType, CliError> {
    if raw_alpha {
        let d = tr.raw_distribution()?;
        writeln!(err, "point mass at zero: {}", csv_number(d.deficit()))?;
        Ok(d)
    } else {
        Ok(tr.ph.clone())
    }
}

/// Runs one parsed command; returns the process exit code.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli, out, err),
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            if e.use_stderr() {
                2
            } else {
                let _ = write!(out, "{}", e.render());
                0
            }
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    match cmd {
        Command::Check { input } => cmd_check(&input, out),
        Command::Convert { source, format } => cmd_convert(&source, format, out),
        Command::Eval {
            input,
            what,
            grid,
            raw_alpha,
        } => cmd_eval(&input, what, &grid, raw_alpha, out, err),
        Command::Simulate {
            input,
            samples,
            seed,
            raw_alpha,
            summary,
        } => cmd_simulate(&input, samples, seed, raw_alpha, summary.as_deref(), out, err),
        Command::Compare {
            source,
            transform,
            u,
            grid,
        } => cmd_compare(&source, transform.as_deref(), u, &grid, out),
    }
}

fn cmd_check(input: &Path, out: &mut dyn Write) -> Result<i32, CliError> {
    let doc = RealizationDocument::parse(&read(input)?)?;
    let checks = doc.checks()?;
    writeln!(
        out,
        "{}",
        serde_json::to_string_pretty(&checks).expect("checks serialize")
    )?;
    Ok(if checks.all_hold() { 0 } else { 1 })
}

fn cmd_convert(src: &SystemSource, format: OutputFormat, out: &mut dyn Write) -> Result<i32, CliError> {
    let r = load_system(src)?;
    let doc = TransformDocument::from_result(&transform(&r)?);
    match format {
        OutputFormat::Json => writeln!(out, "{}", doc.to_json())?,
        OutputFormat::Csv => write!(out, "{}", doc.to_csv())?,
    }
    Ok(0)
}

fn cmd_eval(
    input: &Path,
    what: Quantity,
    grid: &str,
    raw_alpha: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, CliError> {
    let tr = load_transform(input)?;
    let d = distribution(&tr, raw_alpha, err)?;
    let points = parse_grid(grid)?;
    let mismatch = |q: &str| CliError::Usage(format!("{q} is not defined for a {} distribution", d.kind().as_str()));
    let mut csv = String::new();
    match what {
        Quantity::Mean => {
            csv.push_str("x,value\n");
            csv.push_str(&format!("mean,{}\n", csv_number(ph_mean(&d)?)));
        }
        Quantity::Tpm => {
            csv.push_str("s,i,j,p\n");
            for &s in &points {
                let p = match &d {
                    PhaseType::Continuous(c) => cph_tpm(c, s)?,
                    PhaseType::Discrete(c) => dph_tpm(c, integer_points(&[s])?[0])?,
                };
                for i in 0..p.rows() {
                    for j in 0..p.cols() {
                        csv.push_str(&format!("{},{i},{j},{}\n", csv_number(s), csv_number(p[(i, j)])));
                    }
                }
            }
        }
        Quantity::Pdf | Quantity::Cdf | Quantity::Pmf => {
            csv.push_str("x,value\n");
            for &x in &points {
                let v = match (&d, what) {
                    (PhaseType::Continuous(c), Quantity::Pdf) => cph_pdf(c, x)?,
                    (PhaseType::Continuous(c), Quantity::Cdf) => cph_cdf(c, x)?,
                    (PhaseType::Discrete(c), Quantity::Pmf) => dph_pmf(c, integer_points(&[x])?[0])?,
                    (PhaseType::Discrete(c), Quantity::Cdf) => dph_cdf(c, integer_points(&[x])?[0])?,
                    (_, Quantity::Pdf) => return Err(mismatch("pdf")),
                    _ => return Err(mismatch("pmf")),
                };
                csv.push_str(&format!("{},{}\n", csv_number(x), csv_number(v)));
            }
        }
    }
    out.write_all(csv.as_bytes())?;
    Ok(0)
}

fn cmd_simulate(
    input: &Path,
    samples: usize,
    seed: u64,
    raw_alpha: bool,
    summary_path: Option<&Path>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, CliError> {
    if samples == 0 {
        return Err(CliError::Usage("--samples must be at least 1".into()));
    }
    let tr = load_transform(input)?;
    let d = distribution(&tr, raw_alpha, err)?;
    let set = par_sample(&d, samples, seed)?;
    let mut csv = String::with_capacity(samples * 8);
    csv.push_str("value\n");
    for v in &set.values {
        csv.push_str(&csv_number(*v));
        csv.push('\n');
    }
    out.write_all(csv.as_bytes())?;
    let summary = json!({ "mean": set.mean, "var": set.variance, "n": samples, "seed": seed });
    let text = serde_json::to_string(&summary).expect("summary serializes");
    match summary_path {
        Some(p) => fs::write(p, text + "\n")?,
        None => writeln!(err, "{text}")?,
    }
    Ok(0)
}

fn cmd_compare(
    src: &SystemSource,
    transform_path: Option<&Path>,
    u: f64,
    grid: &str,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let r = load_system(src)?;
    let tr = match transform_path {
        Some(p) => load_transform(p)?,
        None => transform(&r)?,
    };
    let points = parse_grid(grid)?;
    if r.kind() == Kind::Discrete {
        integer_points(&points)?;
    }
    let rep = verify_equivalence(&r, &tr, u, &points)?;
    let mut csv = String::from("t,y_system,y_ph\n");
    for ((t, a), b) in rep.grid.iter().zip(&rep.y_system).zip(&rep.y_ph) {
        csv.push_str(&format!("{},{},{}\n", csv_number(*t), csv_number(*a), csv_number(*b)));
    }
    let verdict = if rep.passed() { "PASS" } else { "FAIL" };
    csv.push_str(&format!("MAX_ABS_ERR={:e} {verdict}\n", rep.max_abs_err));
    out.write_all(csv.as_bytes())?;
    Ok(if rep.passed() { 0 } else { 1 })
}
