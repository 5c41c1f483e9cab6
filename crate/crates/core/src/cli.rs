//! Command-line surface.
//!
//! Every invocation writes exactly one envelope to standard output, either
//! as text or (`--format machine`) as a single-line JSON document matching
//! `schema/envelope.schema.json`. Floating-point values in machine output
//! are written with 17 significant digits.
//!
//! Exit codes: 0 ok, 1 usage error, 2 validation failure.

use std::fmt::Write as _;
use std::io;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::devices::{born, prepare};
use crate::error::Error;
use crate::experiment::{
    chi_square_uniform, cross_validate, run, Behavior, ExperimentConfig, DEFAULT_CLASSIFY_TOL,
};
use crate::logic::{decide, partition_table, BinaryFunction};
use crate::modmath::Dimension;
use crate::mub::verify;
use crate::Proposition;

pub const SCHEMA_VERSION: &str = "1";

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;

/// Largest d for which the text table uses single-digit pairs.
pub const MAX_TEXT_TABLE_D: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Text,
    Machine,
}

#[derive(Debug, Parser)]
#[command(name = "mubsim", version, about = "Encode axioms about d-valent functions into qudits and measure them in mutually unbiased bases")]
pub struct Cli {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PropArg(pub usize, pub usize);

fn parse_prop(s: &str) -> Result<PropArg, String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected `a,b`, got `{s}`"))?;
    let a = a.trim().parse().map_err(|e| format!("bad partition index `{a}`: {e}"))?;
    let b = b.trim().parse().map_err(|e| format!("bad group index `{b}`: {e}"))?;
    Ok(PropArg(a, b))
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the partition table of all d² functions
    Table {
        #[arg(long = "d")]
        d: usize,
    },
    /// Verify the complete set of mutually unbiased bases
    VerifyMub {
        #[arg(long = "d")]
        d: usize,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Decide a theorem {m,n} given the axiom {a,b}
    Decide {
        #[arg(long = "d")]
        d: usize,
        #[arg(long, value_parser = parse_prop)]
        axiom: PropArg,
        #[arg(long, value_parser = parse_prop)]
        theorem: PropArg,
    },
    /// Born probabilities of measuring the encoded axiom in basis m
    Probs {
        #[arg(long = "d")]
        d: usize,
        #[arg(long, value_parser = parse_prop)]
        axiom: PropArg,
        #[arg(long)]
        measure: usize,
    },
    /// Seeded multi-trial experiment with a chi-square uniformity test
    Run {
        #[arg(long = "d")]
        d: usize,
        #[arg(long, value_parser = parse_prop)]
        axiom: PropArg,
        #[arg(long)]
        measure: usize,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Compare decidability with measurement statistics for every axiom and basis
    CrossValidate {
        #[arg(long = "d")]
        d: usize,
        #[arg(long, default_value_t = DEFAULT_CLASSIFY_TOL)]
        tol: f64,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Table { .. } => "table",
            Command::VerifyMub { .. } => "verify-mub",
            Command::Decide { .. } => "decide",
            Command::Probs { .. } => "probs",
            Command::Run { .. } => "run",
            Command::CrossValidate { .. } => "cross-validate",
        }
    }

    fn parameters(&self) -> Value {
        let pair = |p: &PropArg| json!([p.0, p.1]);
        match self {
            Command::Table { d } => json!({ "d": d }),
            Command::VerifyMub { d, tol } => json!({ "d": d, "tol": tol }),
            Command::Decide { d, axiom, theorem } => {
                json!({ "d": d, "axiom": pair(axiom), "theorem": pair(theorem) })
            }
            Command::Probs { d, axiom, measure } => {
                json!({ "d": d, "axiom": pair(axiom), "measure": measure })
            }
            Command::Run {
                d,
                axiom,
                measure,
                trials,
                seed,
            } => json!({
                "d": d,
                "axiom": pair(axiom),
                "measure": measure,
                "trials": trials,
                "seed": seed,
            }),
            Command::CrossValidate { d, tol } => json!({ "d": d, "tol": tol }),
        }
    }
}

/// One command's result before rendering.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Envelope {
    pub schema_version: &'static str,
    pub command: String,
    pub parameters: Value,
    pub status: Status,
    pub payload: Value,
    pub error_message: Option<String>,
    #[serde(skip)]
    pub text: String,
    #[serde(skip)]
    pub exit_code: i32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Error,
}

/// Rendered output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub exit_code: i32,
}

struct Outcome {
    payload: Value,
    text: String,
    failure: Option<String>,
}

impl Outcome {
    fn ok(payload: Value, text: String) -> Self {
        Outcome {
            payload,
            text,
            failure: None,
        }
    }
}

/// JSON formatter writing floats as `{:.16e}`.
struct Sig17;

impl serde_json::ser::Formatter for Sig17 {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value as f64)
    }
}

/// Serialize as compact JSON with 17-significant-digit floats.
pub fn to_machine_json<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Sig17);
    value.serialize(&mut ser).expect("in-memory serialization");
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}

impl Envelope {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Machine => {
                let mut s = to_machine_json(self);
                s.push('\n');
                s
            }
            Format::Text => match &self.error_message {
                Some(msg) if self.text.is_empty() => format!("error: {msg}\n"),
                Some(msg) => format!("{}error: {msg}\n", self.text),
                None => self.text.clone(),
            },
        }
    }
}

fn usage_error(command: &str, parameters: Value, message: String) -> Envelope {
    Envelope {
        schema_version: SCHEMA_VERSION,
        command: command.to_string(),
        parameters,
        status: Status::Error,
        payload: Value::Null,
        error_message: Some(message),
        text: String::new(),
        exit_code: EXIT_USAGE,
    }
}

/// Execute a parsed command.
pub fn execute(command: &Command, format: Format) -> Envelope {
    let name = command.name();
    let parameters = command.parameters();
    match dispatch(command, format) {
        Ok(outcome) => Envelope {
            schema_version: SCHEMA_VERSION,
            command: name.to_string(),
            parameters,
            status: if outcome.failure.is_some() {
                Status::Error
            } else {
                Status::Ok
            },
            payload: outcome.payload,
            exit_code: if outcome.failure.is_some() {
                EXIT_VALIDATION
            } else {
                EXIT_OK
            },
            error_message: outcome.failure,
            text: outcome.text,
        },
        Err(e) => usage_error(name, parameters, e.to_string()),
    }
}

/// Parse `args` (including the program name) and execute.
pub fn run_cli<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    match Cli::try_parse_from(&args) {
        Ok(cli) => {
            let envelope = execute(&cli.command, cli.format);
            Output {
                stdout: envelope.render(cli.format),
                exit_code: envelope.exit_code,
            }
        }
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Output {
                    stdout: e.to_string(),
                    exit_code: EXIT_OK,
                };
            }
            let format = sniff_format(&args);
            let command = args
                .get(1)
                .and_then(|a| a.to_str())
                .filter(|a| !a.starts_with('-'))
                .unwrap_or("")
                .to_string();
            let message = e.render().to_string().trim_end().to_string();
            let envelope = usage_error(&command, json!({}), message);
            Output {
                stdout: envelope.render(format),
                exit_code: EXIT_USAGE,
            }
        }
    }
}

fn sniff_format(args: &[std::ffi::OsString]) -> Format {
    let args: Vec<&str> = args.iter().filter_map(|a| a.to_str()).collect();
    let machine = args.iter().enumerate().any(|(i, a)| {
        *a == "--format=machine" || (*a == "--format" && args.get(i + 1) == Some(&"machine"))
    });
    if machine {
        Format::Machine
    } else {
        Format::Text
    }
}

fn proposition(arg: &PropArg, d: Dimension) -> Result<Proposition, Error> {
    Proposition::new(arg.0, arg.1, d)
}

fn fmt_prop(p: &Proposition) -> String {
    format!("{{{},{}}}", p.a(), p.b())
}

/// Row label of partition `a`.
pub fn partition_label(a: usize, d: Dimension) -> String {
    match a {
        _ if a == d.get() => "f(0) = b".to_string(),
        0 => "f(1) = b".to_string(),
        1 => "f(1) = f(0) ⊕ b".to_string(),
        _ => format!("f(1) = {a} f(0) ⊕ b"),
    }
}

/// Text rendering of the partition table (single-digit values only).
pub fn render_table(d: Dimension) -> Result<String, Error> {
    if d.get() > MAX_TEXT_TABLE_D {
        return Err(Error::OutOfRange {
            what: "d for text table (use --format machine)",
            value: d.get(),
            max: MAX_TEXT_TABLE_D,
        });
    }
    let table = partition_table(d);
    let width = 3 * d.get() - 1;
    let mut out = String::new();

    let header: Vec<String> = (0..d.get()).map(|b| format!("{:<width$}", format!("b={b}"))).collect();
    writeln!(out, "{}", header.join(" | ").trim_end()).unwrap();
    let rule: Vec<String> = (0..d.get()).map(|_| "-".repeat(width)).collect();
    writeln!(out, "{}", rule.join("-+-")).unwrap();

    for (a, row) in table.iter().enumerate() {
        let cells: Vec<String> = row
            .iter()
            .map(|cell| {
                cell.iter()
                    .map(|f| format!("{}{}", f.f0, f.f1))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        writeln!(out, "{}   {}", cells.join(" | "), partition_label(a, d)).unwrap();
    }
    Ok(out)
}

fn pair(f: &BinaryFunction) -> Value {
    json!([f.f0.value(), f.f1.value()])
}

fn fmt_probs(probabilities: &[f64]) -> String {
    let mut out = String::new();
    for (n, p) in probabilities.iter().enumerate() {
        writeln!(out, "n={n}  {p:.12}").unwrap();
    }
    out
}

fn behavior_text(b: &Behavior) -> String {
    match b {
        Behavior::Deterministic { n } => format!("deterministic(n={n})"),
        Behavior::Uniform => "uniform".to_string(),
        Behavior::Mixed => "mixed".to_string(),
    }
}

fn dispatch(command: &Command, format: Format) -> Result<Outcome, Error> {
    match command {
        Command::Table { d } => {
            let d = Dimension::new(*d)?;
            let table = partition_table(d);
            let rows: Vec<Value> = table
                .iter()
                .enumerate()
                .map(|(a, row)| {
                    json!({
                        "a": a,
                        "label": partition_label(a, d),
                        "cells": row
                            .iter()
                            .map(|cell| cell.iter().map(pair).collect::<Vec<_>>())
                            .collect::<Vec<_>>(),
                    })
                })
                .collect();
            let text = match format {
                Format::Text => render_table(d)?,
                Format::Machine => String::new(),
            };
            Ok(Outcome::ok(json!({ "d": d, "rows": rows }), text))
        }
        Command::VerifyMub { d, tol } => {
            let d = Dimension::new(*d)?;
            let report = verify(d, *tol);
            let passed = report.passed();
            let mut payload = serde_json::to_value(report).expect("plain data");
            payload["passed"] = json!(passed);
            let text = format!(
                "d = {d}, {} bases, tol = {tol:e}\n\
                 max orthonormality deviation  {:.3e}\n\
                 max unbiasedness deviation    {:.3e}\n\
                 max eigenvector residual      {:.3e}\n\
                 max shift residual            {:.3e}\n\
                 {}\n",
                d.get() + 1,
                report.max_orthonormality_deviation,
                report.max_unbiasedness_deviation,
                report.max_eigen_residual,
                report.max_shift_residual,
                if passed { "PASS" } else { "FAIL" },
            );
            Ok(Outcome {
                payload,
                text,
                failure: (!passed).then(|| "mutually unbiased basis verification failed".to_string()),
            })
        }
        Command::Decide { d, axiom, theorem } => {
            let d = Dimension::new(*d)?;
            let axiom = proposition(axiom, d)?;
            let theorem = proposition(theorem, d)?;
            let verdict = decide(&axiom, &theorem, d)?;
            let text = format!(
                "axiom {} ({}), theorem {} ({}): {verdict:?}\n",
                fmt_prop(&axiom),
                partition_label(axiom.a(), d),
                fmt_prop(&theorem),
                partition_label(theorem.a(), d),
            );
            Ok(Outcome::ok(
                json!({ "axiom": axiom, "theorem": theorem, "decidability": verdict }),
                text,
            ))
        }
        Command::Probs { d, axiom, measure } => {
            let d = Dimension::new(*d)?;
            let axiom = proposition(axiom, d)?;
            let dist = born(&prepare(&axiom, d)?, *measure, d)?;
            let text = format!(
                "axiom {} measured in basis {}\n{}",
                fmt_prop(&axiom),
                measure,
                fmt_probs(&dist.probabilities)
            );
            Ok(Outcome::ok(serde_json::to_value(&dist).expect("plain data"), text))
        }
        Command::Run {
            d,
            axiom,
            measure,
            trials,
            seed,
        } => {
            let d = Dimension::new(*d)?;
            let axiom = proposition(axiom, d)?;
            let config = ExperimentConfig::new(d, axiom, *measure, *trials, *seed)?;
            let tally = run(&config)?;
            let mut text = format!(
                "axiom {} measured in basis {}, {} trials, seed {}\n",
                fmt_prop(&axiom),
                measure,
                trials,
                seed
            );
            for (n, c) in tally.counts.iter().enumerate() {
                writeln!(text, "n={n}  {c}").unwrap();
            }
            let (uniformity, uniformity_error) = match chi_square_uniform(&tally) {
                Ok(r) => {
                    writeln!(
                        text,
                        "chi-square {:.4} (df {}, critical {} at alpha {}): {:?}",
                        r.chi_square_statistic, r.degrees_of_freedom, r.critical_value, r.alpha, r.verdict
                    )
                    .unwrap();
                    (serde_json::to_value(r).expect("plain data"), Value::Null)
                }
                Err(e) => {
                    writeln!(text, "chi-square: {e}").unwrap();
                    (Value::Null, json!(e.to_string()))
                }
            };
            Ok(Outcome::ok(
                json!({
                    "tally": tally,
                    "uniformity": uniformity,
                    "uniformity_error": uniformity_error,
                }),
                text,
            ))
        }
        Command::CrossValidate { d, tol } => {
            let d = Dimension::new(*d)?;
            let report = cross_validate(d, *tol)?;
            let mut text = format!(
                "d = {d}: {} axioms x {} bases = {} cells, {} disagreements, max |p - count/d| = {:.3e}\n",
                d.get() * (d.get() + 1),
                d.get() + 1,
                report.cells.len(),
                report.disagreements,
                report.max_multiplicity_deviation,
            );
            for cell in report.cells.iter().filter(|c| !c.agree) {
                writeln!(
                    text,
                    "  disagreement: axiom {} basis {}: predicted {}, observed {}",
                    fmt_prop(&cell.axiom),
                    cell.m,
                    behavior_text(&cell.predicted),
                    behavior_text(&cell.observed)
                )
                .unwrap();
            }
            let failure = (!report.all_agree())
                .then(|| format!("{} cells disagree", report.disagreements));
            Ok(Outcome {
                payload: serde_json::to_value(&report).expect("plain data"),
                text,
                failure,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cli(args: &[&str]) -> Output {
        run_cli(std::iter::once("mubsim").chain(args.iter().copied()))
    }

    #[test]
    fn sig17_formatting() {
        assert_eq!(to_machine_json(&(1.0f64 / 3.0)), "3.3333333333333331e-1");
        assert_eq!(to_machine_json(&1.0f64), "1.0000000000000000e0");
        assert_eq!(to_machine_json(&0u64), "0");
        let x: f64 = to_machine_json(&0.1f64).parse().unwrap();
        assert_eq!(x, 0.1);
    }

    #[test]
    fn table_row_text() {
        let d = Dimension::new(3).unwrap();
        let text = render_table(d).unwrap();
        let row2 = text.lines().nth(4).unwrap();
        assert!(row2.starts_with("00 12 21 | 01 10 22 | 02 11 20"), "{row2}");
        assert!(render_table(Dimension::new(11).unwrap()).is_err());
    }

    #[test]
    fn labels() {
        let d = Dimension::new(5).unwrap();
        assert_eq!(partition_label(0, d), "f(1) = b");
        assert_eq!(partition_label(3, d), "f(1) = 3 f(0) ⊕ b");
        assert_eq!(partition_label(5, d), "f(0) = b");
    }

    #[test]
    fn non_prime_is_usage_error() {
        let out = cli(&["table", "--d", "4"]);
        assert_eq!(out.exit_code, EXIT_USAGE);
        assert!(out.stdout.contains("d must be prime"));
        let out = cli(&["verify-mub", "--d", "9", "--format", "machine"]);
        assert_eq!(out.exit_code, EXIT_USAGE);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["status"], "error");
        assert_eq!(v["command"], "verify-mub");
    }

    #[test]
    fn parse_errors_are_enveloped() {
        let out = cli(&["decide", "--d", "3", "--axiom", "1", "--theorem", "1,1", "--format", "machine"]);
        assert_eq!(out.exit_code, EXIT_USAGE);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["status"], "error");
        assert!(v["error_message"].as_str().unwrap().contains("a,b"));
    }

    #[test]
    fn prop_parser() {
        assert_eq!(parse_prop("1,2"), Ok(PropArg(1, 2)));
        assert_eq!(parse_prop(" 3 , 0"), Ok(PropArg(3, 0)));
        assert!(parse_prop("3").is_err());
        assert!(parse_prop("x,1").is_err());
    }
}
