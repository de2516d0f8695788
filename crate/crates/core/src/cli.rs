//! Command-line front end.
//!
//! Exit codes: 0 when every check passed, 1 when a mathematical check failed
//! (or an input table was rejected), 2 for usage and parameter errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::exactnum::Integer;
use crate::ikeda::{verify_range, EigenvalueReport, IkedaError, IkedaParams};
use crate::modforms::{eigenform, load_eigenform, FormsError, FourierSeries};
use crate::qseries::{q_binomial, QSeriesError};
use crate::selftest;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "ikeda",
    version,
    about = "Exact prime Hecke eigenvalues of Ikeda lifts"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Emit one record per prime p <= pmax
    Eigen(SweepArgs),
    /// Check route agreement, positivity and bounds for all primes <= pmax
    Verify(SweepArgs),
    /// Print a Gaussian binomial coefficient, or its value at q
    Qbinom(QbinomArgs),
    /// Print eigenform coefficients a(1..=pmax)
    Forms(FormsArgs),
    /// Run the built-in invariant suite
    Selftest,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    /// Degree of the lift (even, >= 2)
    #[arg(long, allow_hyphen_values = true)]
    pub n: i64,
    /// Weight of the lift (even, > n + 1)
    #[arg(long, allow_hyphen_values = true)]
    pub k: i64,
    /// Largest prime to process
    #[arg(long, default_value_t = 100)]
    pub pmax: u64,
    /// Coefficient table for the weight 2k - n eigenform
    #[arg(long)]
    pub eigenform: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write to this file instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Fractional digits of the decimal bound renderings
    #[arg(long, default_value_t = 50)]
    pub digits: usize,
}

#[derive(Debug, Clone, Args)]
pub struct QbinomArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub n: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub m: i64,
    /// Evaluate at this integer instead of printing the polynomial
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<Integer>,
}

#[derive(Debug, Clone, Args)]
pub struct FormsArgs {
    /// One of 12, 16, 18, 20, 22, 26
    #[arg(long)]
    pub weight: u32,
    #[arg(long, default_value_t = 30)]
    pub pmax: usize,
    /// Validate and print this table instead of the built-in form
    #[arg(long)]
    pub eigenform: Option<PathBuf>,
}

/// One output row. Big integers travel as decimal strings so that JSON
/// consumers never round them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub p: u64,
    pub a_p: String,
    pub lambda: String,
    pub lower_exact: String,
    pub upper_exact: String,
    pub lower_decimal: String,
    pub upper_decimal: String,
    pub positive: bool,
    pub within_bounds: bool,
    pub routes_agree: bool,
}

impl Record {
    pub fn from_report(r: &EigenvalueReport, digits: usize) -> Self {
        Record {
            p: r.p,
            a_p: r.a_p.to_string(),
            lambda: r.lambda.to_string(),
            lower_exact: r.lower.to_string(),
            upper_exact: r.upper.to_string(),
            lower_decimal: r.lower.to_decimal(digits),
            upper_decimal: r.upper.to_decimal(digits),
            positive: r.positive,
            within_bounds: r.within_bounds,
            routes_agree: r.routes_agree,
        }
    }
}

pub fn records_to_csv(records: &[Record]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in records {
        w.serialize(r).expect("in-memory CSV write");
    }
    String::from_utf8(w.into_inner().expect("in-memory CSV flush")).expect("CSV is UTF-8")
}

pub fn records_from_csv(text: &str) -> Result<Vec<Record>, csv::Error> {
    csv::Reader::from_reader(text.as_bytes())
        .deserialize()
        .collect()
}

pub fn records_to_json(records: &[Record]) -> String {
    let mut s = serde_json::to_string_pretty(records).expect("records serialize");
    s.push('\n');
    s
}

pub fn records_from_json(text: &str) -> Result<Vec<Record>, serde_json::Error> {
    serde_json::from_str(text)
}

/// A failure with its exit code, reported on stderr.
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(message: impl ToString) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.to_string(),
        }
    }

    fn check(message: impl ToString) -> Self {
        Failure {
            code: EXIT_CHECK_FAILED,
            message: message.to_string(),
        }
    }
}

impl From<FormsError> for Failure {
    fn from(e: FormsError) -> Self {
        match e {
            FormsError::Parse { .. }
            | FormsError::Validation { .. }
            | FormsError::DeligneViolation { .. }
            | FormsError::DeltaMismatch(_)
            | FormsError::NonIntegral { .. } => Failure::check(e),
            _ => Failure::usage(e),
        }
    }
}

impl From<IkedaError> for Failure {
    fn from(e: IkedaError) -> Self {
        match e {
            IkedaError::InvalidParams { .. } | IkedaError::NotPrime(_) => Failure::usage(e),
            IkedaError::Forms(f) => f.into(),
            _ => Failure::check(e),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{rendered}")
            } else {
                write!(err, "{rendered}")
            };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Eigen(a) => run_eigen(a, out),
        Command::Verify(a) => run_verify(a, out),
        Command::Qbinom(a) => run_qbinom(a, out),
        Command::Forms(a) => run_forms(a, out),
        Command::Selftest => run_selftest(out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn load_form(weight: u32, path: Option<&PathBuf>, n: usize) -> Result<FourierSeries, Failure> {
    Ok(match path {
        Some(path) => load_eigenform(path, weight)?,
        None => eigenform(weight, n)?,
    })
}

fn sweep(args: &SweepArgs) -> Result<Vec<EigenvalueReport>, Failure> {
    let params = IkedaParams::new(args.n, args.k)?;
    if args.pmax < 2 {
        return Err(Failure::usage("--pmax must be at least 2"));
    }
    let form = load_form(
        params.eigenform_weight(),
        args.eigenform.as_ref(),
        args.pmax as usize,
    )?;
    if form.truncation() < args.pmax as usize {
        return Err(Failure::usage(format!(
            "eigenform table ends at m = {}, below --pmax {}",
            form.truncation(),
            args.pmax
        )));
    }
    Ok(verify_range(&params, &form, args.pmax)?)
}

fn emit(text: &str, path: Option<&PathBuf>, out: &mut dyn Write) -> Result<(), Failure> {
    match path {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::usage(format!("{}: {e}", path.display()))),
        None => out.write_all(text.as_bytes()).map_err(Failure::usage),
    }
}

fn exit_for(reports: &[EigenvalueReport]) -> i32 {
    if reports.iter().all(EigenvalueReport::passed) {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    }
}

pub fn run_eigen(args: &SweepArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let reports = sweep(args)?;
    let records: Vec<Record> = reports
        .iter()
        .map(|r| Record::from_report(r, args.digits))
        .collect();
    let text = match args.format {
        Format::Csv => records_to_csv(&records),
        Format::Json => records_to_json(&records),
    };
    emit(&text, args.out.as_ref(), out)?;
    Ok(exit_for(&reports))
}

pub fn run_verify(args: &SweepArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let reports = sweep(args)?;
    let count = |f: fn(&EigenvalueReport) -> bool| reports.iter().filter(|r| f(r)).count();
    let mut text = String::new();
    text.push_str(&format!(
        "n = {}, k = {}, eigenform weight {}, primes p <= {}: {}\n",
        args.n,
        args.k,
        2 * args.k - args.n,
        args.pmax,
        reports.len()
    ));
    text.push_str(&format!("{:<16}{:>8}{:>8}\n", "check", "pass", "fail"));
    for (name, passed) in [
        ("routes agree", count(|r| r.routes_agree)),
        ("positive", count(|r| r.positive)),
        ("within bounds", count(|r| r.within_bounds)),
    ] {
        text.push_str(&format!(
            "{name:<16}{passed:>8}{:>8}\n",
            reports.len() - passed
        ));
    }
    for r in reports.iter().filter(|r| !r.passed()) {
        text.push_str(&format!("FAIL p = {}: lambda = {}\n", r.p, r.lambda));
    }
    emit(&text, args.out.as_ref(), out)?;
    Ok(exit_for(&reports))
}

pub fn run_qbinom(args: &QbinomArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let poly = q_binomial(args.n, args.m).map_err(|e| match e {
        QSeriesError::OutOfRange { .. } | QSeriesError::NegativeArgument(_) => Failure::usage(e),
        _ => Failure::check(e),
    })?;
    let text = match &args.q {
        Some(q0) => poly.eval(q0).map_err(Failure::check)?.to_string(),
        None => poly.display_in("q"),
    };
    writeln!(out, "{text}").map_err(Failure::usage)?;
    Ok(EXIT_OK)
}

pub fn run_forms(args: &FormsArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let form = load_form(args.weight, args.eigenform.as_ref(), args.pmax.max(1))?;
    let text = crate::modforms::format_table(&form, args.pmax);
    out.write_all(text.as_bytes()).map_err(Failure::usage)?;
    Ok(EXIT_OK)
}

pub fn run_selftest(out: &mut dyn Write) -> Result<i32, Failure> {
    let outcomes = selftest::run_all();
    let mut failed = 0;
    for o in &outcomes {
        let line = match &o.result {
            Ok(()) => format!("PASS {}", o.name),
            Err(why) => {
                failed += 1;
                format!("FAIL {}: {why}", o.name)
            }
        };
        writeln!(out, "{line}").map_err(Failure::usage)?;
    }
    writeln!(out, "{} passed, {failed} failed", outcomes.len() - failed).map_err(Failure::usage)?;
    Ok(if failed == 0 {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    })
}
