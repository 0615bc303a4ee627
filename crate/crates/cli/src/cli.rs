//! Command-line front end.
//!
//! Exit codes: `0` success, `1` strict inclusion not witnessed, `2` a query
//! or program produced an error report, `3` invalid tail parameters, `64`
//! usage error, `66` unreadable input file, `73` unwritable output file.

use std::ffi::OsString;
use std::fs;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rucert_core::{Rational, TailFunction, TailParams};

use crate::dsl::{parse, parse_expr, parse_rational, Query, TailQuery};
use crate::eval::{eval_program, eval_query, eval_tail_query, Environment};
use crate::plot::{emit_plot, Scale};
use crate::report::Report;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_WITNESSED: i32 = 1;
pub const EXIT_REPORT_ERROR: i32 = 2;
pub const EXIT_INVALID_PARAMS: i32 = 3;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_NO_INPUT: i32 = 66;
pub const EXIT_CANT_CREATE: i32 = 73;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

#[derive(Debug, Parser)]
#[command(name = "rucert", version, about = "Exact piecewise-linear lattice queries and the strict-inclusion certificate")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, clap::Args)]
struct TailArgs {
    /// Period ratio, b_(n+1) = rho * b_n.
    #[arg(long, default_value = "1/4", value_parser = rational_arg)]
    rho: Rational,
    /// Offset of a_n inside its period, a_n = alpha * b_n.
    #[arg(long, default_value = "1/2", value_parser = rational_arg)]
    alpha: Rational,
}

impl TailArgs {
    fn params(&self) -> rucert_core::Result<TailParams> {
        TailParams::new(self.rho.clone(), self.alpha.clone(), Rational::one())
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Certify that the oscillating tail lies in the ideal of u but not in
    /// the closure of E_u.
    Verify {
        #[command(flatten)]
        tail: TailArgs,
        #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u32).range(1..))]
        depth: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run a .plx program.
    Run {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Norm of an expression with respect to a regulator.
    Norm {
        #[arg(long)]
        expr: String,
        #[arg(long, default_value = "u")]
        wrt: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Decide lhs <= rhs on [0, 1].
    Leq {
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Evaluate an expression at a rational point.
    Eval {
        #[arg(long)]
        expr: String,
        #[arg(long, value_parser = rational_arg)]
        at: Rational,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Write t,f,u samples of the oscillating tail as CSV.
    Plot {
        #[command(flatten)]
        tail: TailArgs,
        #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u32).range(1..))]
        depth: u32,
        #[arg(long, default_value_t = 2000, value_parser = clap::value_parser!(u32).range(2..))]
        samples: u32,
        #[arg(long, value_enum, default_value_t = Scale::Log)]
        scale: Scale,
        #[arg(long)]
        out: PathBuf,
    },
}

fn write_reports(reports: &[Report], format: Format, out: &mut dyn Write) {
    let _ = match format {
        Format::Text => reports
            .iter()
            .try_for_each(|r| writeln!(out, "{}", r.to_text())),
        Format::Json => {
            let json = if reports.len() == 1 {
                serde_json::to_string_pretty(&reports[0])
            } else {
                serde_json::to_string_pretty(reports)
            }
            .expect("reports serialise");
            writeln!(out, "{json}")
        }
    };
}

fn report_exit(reports: &[Report]) -> i32 {
    if reports.iter().any(Report::is_error) {
        EXIT_REPORT_ERROR
    } else {
        EXIT_OK
    }
}

/// Parses expression arguments and answers one query.
fn single_query(
    build: impl FnOnce() -> Result<Query, crate::dsl::ParseError>,
    format: Format,
    out: &mut dyn Write,
) -> i32 {
    let report = match build() {
        Ok(q) => eval_query(&q, &Environment::new()).unwrap_or_else(|e| Report::from(&e)),
        Err(e) => Report::error("parse_error", e.to_string()),
    };
    let reports = [report];
    write_reports(&reports, format, out);
    report_exit(&reports)
}

/// Runs the command line `args` (program name first) and returns the
/// process exit code.
pub fn run_command<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };

    match cli.command {
        Command::Verify {
            tail,
            depth,
            format,
        } => {
            let params = match tail.params() {
                Ok(p) => p,
                Err(e) => {
                    let _ = writeln!(err, "error[{}]: {}", e.code(), e.message());
                    return EXIT_INVALID_PARAMS;
                }
            };
            let report = eval_tail_query(&TailQuery::Verify { params, depth })
                .unwrap_or_else(|e| Report::from(&e));
            let code = if report.is_error() {
                EXIT_NOT_WITNESSED
            } else {
                EXIT_OK
            };
            write_reports(&[report], format, out);
            code
        }
        Command::Run { file, format } => {
            let source = match fs::read_to_string(&file) {
                Ok(s) => s,
                Err(e) => {
                    let _ = writeln!(err, "cannot read {}: {e}", file.display());
                    return EXIT_NO_INPUT;
                }
            };
            let reports = match parse(&source) {
                Ok(stmts) => eval_program(&stmts, &mut Environment::new()),
                Err(e) => vec![Report::error("parse_error", e.to_string())],
            };
            write_reports(&reports, format, out);
            report_exit(&reports)
        }
        Command::Norm { expr, wrt, format } => single_query(
            || {
                Ok(Query::Norm {
                    expr: parse_expr(&expr)?,
                    wrt: parse_expr(&wrt)?,
                })
            },
            format,
            out,
        ),
        Command::Leq { lhs, rhs, format } => single_query(
            || {
                Ok(Query::Leq {
                    lhs: parse_expr(&lhs)?,
                    rhs: parse_expr(&rhs)?,
                })
            },
            format,
            out,
        ),
        Command::Eval { expr, at, format } => single_query(
            || {
                Ok(Query::Eval {
                    expr: parse_expr(&expr)?,
                    at,
                })
            },
            format,
            out,
        ),
        Command::Plot {
            tail,
            depth,
            samples,
            scale,
            out: path,
        } => {
            let params = match tail.params() {
                Ok(p) => p,
                Err(e) => {
                    let _ = writeln!(err, "error[{}]: {}", e.code(), e.message());
                    return EXIT_INVALID_PARAMS;
                }
            };
            let f = TailFunction::counterexample(params);
            let written = fs::File::create(&path).and_then(|file| {
                emit_plot(&f, samples as usize, scale, depth, BufWriter::new(file))
            });
            match written {
                Ok(()) => EXIT_OK,
                Err(e) => {
                    let _ = writeln!(err, "cannot write {}: {e}", path.display());
                    EXIT_CANT_CREATE
                }
            }
        }
    }
}
