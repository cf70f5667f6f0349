//! Command-line front end.
//!
//! Exit codes: 0 success or Holds, 1 Fails (or a failed check or demo),
//! 2 syntax or usage error, 3 domain error, 4 Inconclusive, 5 any other
//! error.

pub mod checks;
pub mod config;
pub mod demos;
pub mod report;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::bundle::{lift_partial_derivative, section_apply};
use crate::expr::{eval, parse, simplify, Expr};
use crate::hyperspace::{equivalent, project, FunSeq, HyperElement, Verdict, Window};
use crate::{Error, Result};
use checks::Suite;
use config::{combination_element, FamilySpec, RunConfig, SectionSpec, SeqSpec};
use demos::Demo;
use report::Format;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILS: i32 = 1;
pub const EXIT_SYNTAX: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_INCONCLUSIVE: i32 = 4;
pub const EXIT_ERROR: i32 = 5;

/// Seed for random-point checks when `EXTRAFUN_SEED` is unset.
pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Debug, Parser)]
#[command(
    name = "extrafun",
    version,
    about = "Function sequences modulo seminorm-limit equivalence"
)]
pub struct Cli {
    /// TOML run configuration.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Index window and tolerance, START:END:EPS.
    #[arg(long, global = true)]
    pub window: Option<Window>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate an expression at (x, n).
    Eval {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        x: f64,
        #[arg(long, default_value_t = 1)]
        n: u64,
    },
    /// Decide whether two sequences are equivalent.
    Equiv {
        /// First sequence, an expression in x and n.
        #[arg(long, allow_hyphen_values = true)]
        f: Option<String>,
        /// Second sequence.
        #[arg(long, allow_hyphen_values = true)]
        g: Option<String>,
        /// Family: abs, pointwise:P1,P2,... or compact-sup:A:B,...
        #[arg(long)]
        family: Option<String>,
    },
    /// Sectional derivative of a class.
    Diff {
        /// Sequence representing the class.
        #[arg(long, allow_hyphen_values = true)]
        f: Option<String>,
        /// Family, in the same syntax as for equiv.
        #[arg(long)]
        family: Option<String>,
        /// rep or smoothing; overrides the configured section.
        #[arg(long)]
        section: Option<String>,
        /// Indices whose derivative terms are printed.
        #[arg(long, value_delimiter = ',')]
        indices: Option<Vec<u64>>,
        /// Sequence the derivative is compared with.
        #[arg(long, allow_hyphen_values = true)]
        compare: Option<String>,
        /// Largest index searched for the first differentiable term.
        #[arg(long)]
        max_scan: Option<u64>,
    },
    /// Run a built-in scenario.
    Demo {
        #[arg(value_enum)]
        name: Demo,
    },
    /// Run a property suite over built-in fixtures.
    Check {
        #[arg(value_enum)]
        suite: Suite,
    },
}

/// `EXTRAFUN_SEED`, or [`DEFAULT_SEED`].
pub fn seed_from_env() -> u64 {
    std::env::var("EXTRAFUN_SEED")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Syntax { .. } | Error::InvalidArgument(_) => EXIT_SYNTAX,
        Error::Domain(_) => EXIT_DOMAIN,
        _ => EXIT_ERROR,
    }
}

pub fn verdict_code(v: Verdict) -> i32 {
    match v {
        Verdict::Holds => EXIT_OK,
        Verdict::Fails => EXIT_FAILS,
        Verdict::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

/// Runs one command, writing the report to `out` and errors to `err`.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match execute(cli, out) {
        Ok(code) => code,
        Err(Failure::Calc(e)) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
        Err(Failure::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: cannot write output: {e}");
            EXIT_ERROR
        }
    }
}

/// Calculus errors and output errors, kept apart so a closed pipe is not
/// reported as a usage error.
#[derive(Debug)]
pub enum Failure {
    Calc(Error),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Calc(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> std::result::Result<i32, Failure> {
    let cfg = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    let family = |flag: &Option<String>| match flag {
        Some(s) => FamilySpec::parse_flag(s)?.build(),
        None => cfg.family(),
    };
    let window = |q| match cli.window {
        Some(w) => Ok(w),
        None => cfg.window(q),
    };
    let sequence = |flag: &Option<String>, spec: &Option<SeqSpec>, name: &str| -> Result<FunSeq> {
        match (flag, spec) {
            (Some(src), _) => Ok(FunSeq::Expr(parse(src)?)),
            (None, Some(spec)) => spec.build(),
            (None, None) => Err(Error::InvalidArgument(format!("no sequence `{name}` given"))),
        }
    };
    match &cli.command {
        Command::Eval { expr, x, n } => {
            if *n == 0 {
                return Err(Error::InvalidArgument("n starts at 1".into()).into());
            }
            let v = eval(&parse(expr)?, *x, *n)?;
            match cli.format {
                Format::Text => writeln!(out, "{v}")?,
                Format::Csv => {
                    let rows = [
                        ("x", x.to_string()),
                        ("n", n.to_string()),
                        ("value", v.to_string()),
                    ];
                    report::fields(out, cli.format, &rows)?
                }
            }
            Ok(EXIT_OK)
        }
        Command::Equiv { f, g, family: fam } => {
            let q = family(fam)?;
            let w = window(&q)?;
            let f = sequence(f, &cfg.f, "f")?;
            let g = sequence(g, &cfg.g, "g")?;
            let d = equivalent(&f, &g, &q, &w)?;
            if cli.format == Format::Text {
                writeln!(out, "f = {f}\ng = {g}\nfamily {q}, window {w}")?;
            }
            report::decision(out, cli.format, "f ~ g", &d)?;
            Ok(verdict_code(d.verdict))
        }
        Command::Diff {
            f,
            family: fam,
            section,
            indices,
            compare,
            max_scan,
        } => {
            let q = family(fam)?;
            let w = window(&q)?;
            let spec = cfg.diff.clone().unwrap_or_default();
            let section_spec = match section.as_deref() {
                Some("rep") => SectionSpec::Rep {},
                Some("smoothing") => SectionSpec::Smoothing {
                    cap: None,
                    scale: None,
                    approximant: None,
                },
                Some(other) => {
                    return Err(Error::InvalidArgument(format!("unknown section `{other}`")).into())
                }
                None => cfg.section.clone().unwrap_or(SectionSpec::Rep {}),
            };
            let r = section_spec.build(&q, &w)?;
            let element: HyperElement = match (&section_spec, &spec.element) {
                (SectionSpec::BasisLinear { basis }, Some(element)) if f.is_none() => {
                    combination_element(basis, element, &q)?
                }
                _ => project(sequence(f, &cfg.f, "f")?, &q),
            };
            let max_scan = max_scan.or(spec.max_scan).unwrap_or(1000);
            let rep = section_apply(&r, &element)?;
            let lifted = lift_partial_derivative(&rep, max_scan)?;
            let shown = indices
                .clone()
                .or(spec.indices.clone())
                .unwrap_or_else(|| vec![1, 2, 3]);
            let mut rows = vec![
                ("F", element.to_string()),
                ("section", r.to_string()),
                ("cutoff", lifted.cutoff.to_string()),
            ];
            let labels: Vec<String> = shown.iter().map(|i| format!("d/dx r(F)_{i}")).collect();
            for (i, label) in shown.iter().zip(&labels) {
                rows.push((label.as_str(), show_term(&lifted.seq, *i)?));
            }
            report::fields(out, cli.format, &rows)?;
            let compare = match (compare, &spec.compare) {
                (Some(src), _) => Some(FunSeq::Expr(parse(src)?)),
                (None, Some(c)) => Some(c.build()?),
                (None, None) => None,
            };
            match compare {
                Some(c) => {
                    let d = equivalent(&lifted.seq, &c, &q, &w)?;
                    report::decision(out, cli.format, "derivative ~ comparison", &d)?;
                    Ok(verdict_code(d.verdict))
                }
                None => Ok(EXIT_OK),
            }
        }
        Command::Demo { name } => {
            let ok = demos::run_demo(*name, cli.window, seed_from_env(), cli.format, out)?;
            Ok(if ok { EXIT_OK } else { EXIT_FAILS })
        }
        Command::Check { suite } => {
            let rows = checks::run_suite(*suite, seed_from_env())?;
            report::properties(out, cli.format, &rows)?;
            Ok(if rows.iter().all(|r| r.ok()) {
                EXIT_OK
            } else {
                EXIT_FAILS
            })
        }
    }
}

fn show_term(f: &FunSeq, i: u64) -> Result<String> {
    let t: Expr = f.term(i)?;
    Ok(simplify(&t.subst_n(i)).to_string())
}
