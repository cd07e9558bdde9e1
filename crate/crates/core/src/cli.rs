//! Command-line front end.
//!
//! Exit codes: 0 success, 2 no relation or corpus failure, 3 precision
//! exhausted or iteration limit, 64 usage or input error.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::json;

use crate::hunter::{hunt, run_corpus, HuntSpec, OutputMode};
use crate::precision::ArbReal;
use crate::pslq::{pslq_run_with_state, PslqOutcome, PslqParams};
use crate::termlang::{evaluate, parse, parse_basis_file};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO_RELATION: i32 = 2;
pub const EXIT_PRECISION: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

/// Environment variable holding the default precision.
pub const DIGITS_ENV: &str = "RELQ_DEFAULT_DIGITS";
pub const DEFAULT_DIGITS: u32 = 24;

#[derive(Parser, Debug)]
#[command(name = "relq", version, about = "Integer-relation hunting for mathematical constants")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Search for a closed form of a target over a basis of terms.
    Hunt(HuntArgs),
    /// Evaluate one expression.
    Eval {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long)]
        digits: Option<u32>,
    },
    /// Run PSLQ on a file of decimal numbers, one per line.
    Pslq {
        #[arg(long)]
        vector: PathBuf,
        #[arg(long)]
        digits: Option<u32>,
        #[command(flatten)]
        tuning: Tuning,
        #[arg(long)]
        json: bool,
    },
    /// The built-in regression corpus.
    Corpus {
        #[command(subcommand)]
        command: CorpusCommand,
    },
}

#[derive(Subcommand, Debug)]
enum CorpusCommand {
    /// Run every case and report pass/fail.
    Run {
        #[arg(long)]
        json: bool,
        /// Replace a case's precision, as NAME=DIGITS.
        #[arg(long = "override", value_name = "NAME=DIGITS")]
        overrides: Vec<String>,
    },
}

#[derive(Args, Debug)]
struct Tuning {
    #[arg(long)]
    gamma: Option<String>,
    #[arg(long)]
    eps: Option<String>,
    #[arg(long = "max-iter")]
    max_iter: Option<u64>,
    #[arg(long = "max-coeff")]
    max_coeff: Option<String>,
}

#[derive(Args, Debug)]
struct HuntArgs {
    #[arg(long, allow_hyphen_values = true)]
    target: Option<String>,
    /// Basis file: one term per line, optional first line `target: EXPR`.
    #[arg(long, conflicts_with = "terms")]
    basis: Option<PathBuf>,
    #[arg(long = "term", value_name = "EXPR", allow_hyphen_values = true)]
    terms: Vec<String>,
    #[arg(long)]
    digits: Option<u32>,
    #[command(flatten)]
    tuning: Tuning,
    #[arg(long, conflicts_with = "text")]
    json: bool,
    #[arg(long)]
    text: bool,
}

struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

fn default_digits() -> Result<u32, Failure> {
    match std::env::var(DIGITS_ENV) {
        Ok(v) => v
            .trim()
            .parse::<u32>()
            .ok()
            .filter(|d| *d > 0)
            .ok_or_else(|| usage(format!("{DIGITS_ENV} must be a positive integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_DIGITS),
    }
}

fn digits_or_default(d: Option<u32>) -> Result<u32, Failure> {
    match d {
        Some(0) => Err(usage("--digits must be positive")),
        Some(d) => Ok(d),
        None => default_digits(),
    }
}

fn params(tuning: &Tuning, digits: u32) -> Result<PslqParams, Failure> {
    let real = |flag: &str, s: &str| {
        ArbReal::parse_decimal(s, digits).map_err(|e| usage(format!("--{flag}: {e}")))
    };
    let mut p = PslqParams::new(digits);
    if let Some(g) = &tuning.gamma {
        p = p.with_gamma(real("gamma", g)?);
    }
    if let Some(e) = &tuning.eps {
        p = p.with_epsilon(real("eps", e)?);
    }
    if let Some(m) = tuning.max_iter {
        p = p.with_max_iterations(m);
    }
    if let Some(k) = &tuning.max_coeff {
        let k: BigInt = k
            .trim()
            .parse()
            .map_err(|_| usage(format!("--max-coeff: not an integer: {k:?}")))?;
        p = p.with_max_coeff(k);
    }
    p.validate().map_err(|e| usage(e.to_string()))?;
    Ok(p)
}

fn read_file(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn cmd_hunt(a: HuntArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let digits = digits_or_default(a.digits)?;
    let mut target = None;
    let mut basis = Vec::new();
    if let Some(path) = &a.basis {
        let file = parse_basis_file(&read_file(path)?)
            .map_err(|e| usage(format!("{}: {e}", path.display())))?;
        target = file.target;
        basis = file.terms;
    }
    for t in &a.terms {
        basis.push(parse(t).map_err(|e| usage(format!("--term {t:?}: {e}")))?);
    }
    if let Some(t) = &a.target {
        target = Some(parse(t).map_err(|e| usage(format!("--target {t:?}: {e}")))?);
    }
    let target = target.ok_or_else(|| usage("no target: pass --target or a basis file with a target line"))?;
    if basis.is_empty() {
        return Err(usage("no basis terms: pass --term or --basis"));
    }
    let spec = HuntSpec {
        target,
        basis,
        digits,
        params: params(&a.tuning, digits)?,
        output: if a.json { OutputMode::Json } else { OutputMode::Text },
    };
    let report = hunt(&spec).map_err(|e| usage(e.to_string()))?;
    let text = match spec.output {
        OutputMode::Json => report.to_json(),
        OutputMode::Text => report.to_text(),
    };
    writeln!(out, "{text}").ok();
    Ok(report.outcome.exit_code())
}

fn cmd_eval(expr: &str, digits: Option<u32>, out: &mut dyn Write) -> Result<i32, Failure> {
    let digits = digits_or_default(digits)?;
    let e = parse(expr).map_err(|e| usage(e.to_string()))?;
    let v = evaluate(&e, digits).map_err(|e| usage(e.to_string()))?;
    writeln!(out, "{}", v.to_decimal_string(digits)).ok();
    Ok(EXIT_OK)
}

fn cmd_pslq(
    path: &PathBuf,
    digits: Option<u32>,
    tuning: &Tuning,
    json: bool,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let digits = digits_or_default(digits)?;
    let text = read_file(path)?;
    let mut x = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let v = ArbReal::parse_decimal(line, digits)
            .map_err(|e| usage(format!("{}:{}: {e}", path.display(), i + 1)))?;
        x.push(v);
    }
    let params = params(tuning, digits)?;
    let (outcome, state) = pslq_run_with_state(&x, &params).map_err(|e| usage(e.to_string()))?;
    let shown = digits.min(50);
    let relation = outcome
        .relation()
        .map(|r| r.coefficients.iter().map(ToString::to_string).collect::<Vec<_>>());
    if json {
        let v = json!({
            "schema_version": crate::hunter::SCHEMA_VERSION,
            "digits": digits,
            "outcome": outcome.kind(),
            "relation": relation,
            "residual": outcome.relation().map(|r| r.residual.to_decimal_string(shown)),
            "confidence": outcome.relation().map(|r| r.confidence.to_decimal_string(shown)),
            "exclusion_bound": outcome.bound().to_decimal_string(shown),
            "iterations": state.iteration(),
        });
        writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json")).ok();
    } else {
        writeln!(out, "outcome:         {}", outcome.kind()).ok();
        if let (Some(rel), Some(r)) = (relation, outcome.relation()) {
            writeln!(out, "relation:        [{}]", rel.join(", ")).ok();
            writeln!(out, "residual:        {}", r.residual.to_decimal_string(6)).ok();
            writeln!(out, "confidence:      {}", r.confidence.to_decimal_string(6)).ok();
        }
        writeln!(out, "exclusion bound: {}", outcome.bound().to_decimal_string(6)).ok();
        writeln!(out, "iterations:      {}", state.iteration()).ok();
    }
    Ok(match outcome {
        PslqOutcome::RelationFound { .. } => EXIT_OK,
        PslqOutcome::NoRelation { .. } => EXIT_NO_RELATION,
        PslqOutcome::PrecisionExhausted { .. } | PslqOutcome::IterationLimit { .. } => EXIT_PRECISION,
    })
}

fn cmd_corpus(json: bool, overrides: &[String], out: &mut dyn Write) -> Result<i32, Failure> {
    let mut map = BTreeMap::new();
    for o in overrides {
        let (name, d) = o
            .split_once('=')
            .ok_or_else(|| usage(format!("--override expects NAME=DIGITS, got {o:?}")))?;
        if !crate::hunter::CASE_NAMES.contains(&name) {
            return Err(usage(format!("unknown corpus case {name:?}")));
        }
        let d: u32 = d
            .parse()
            .ok()
            .filter(|d| *d > 0)
            .ok_or_else(|| usage(format!("bad precision in {o:?}")))?;
        map.insert(name.to_string(), d);
    }
    let report = run_corpus(&map);
    let text = if json { report.to_json() } else { report.to_text() };
    writeln!(out, "{text}").ok();
    Ok(report.exit_code())
}

/// Runs the tool on `args` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp
                | ErrorKind::DisplayVersion
                | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    write!(out, "{e}").ok();
                    if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand {
                        EXIT_USAGE
                    } else {
                        EXIT_OK
                    }
                }
                _ => {
                    let rendered = e.to_string();
                    let line = rendered.lines().next().unwrap_or("error: invalid arguments");
                    writeln!(err, "relq: {}", line.trim_start_matches("error: ")).ok();
                    EXIT_USAGE
                }
            };
        }
    };
    let result = match cli.command {
        Command::Hunt(a) => cmd_hunt(a, out),
        Command::Eval { expr, digits } => cmd_eval(&expr, digits, out),
        Command::Pslq {
            vector,
            digits,
            tuning,
            json,
        } => cmd_pslq(&vector, digits, &tuning, json, out),
        Command::Corpus {
            command: CorpusCommand::Run { json, overrides },
        } => cmd_corpus(json, &overrides, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            writeln!(err, "relq: {}", f.message).ok();
            f.code
        }
    }
}
