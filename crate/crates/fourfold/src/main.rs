//! Thin command-line front end over the `fourfold` library.
//!
//! Subcommands: `eval`, `compare`, `cover`, `tables`. Exit codes: 0 on
//! success, 1 on usage or parse errors, 2 on evaluation errors, 3 when a
//! reproduction table deviates from its golden data.

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use fourfold::report::{build_compare, build_cover, build_report, pretty_json, Format};
use fourfold::tables::{reproduce, Target};
use fourfold::{dsl, Expr};

#[derive(Parser)]
#[command(
    name = "fourfold",
    version,
    about = "Exact eta-invariant engine for closed smooth 4-manifold expressions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,

    /// Cross-check every eta profile against brute-force enumeration.
    #[arg(long, global = true)]
    oracle: bool,

    /// Enumeration bound for the brute-force oracle.
    #[arg(long, global = true, value_name = "N", default_value_t = fourfold::DEFAULT_ENUM_BOUND)]
    max_enum: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an expression and print its invariant report.
    Eval { expr: String },
    /// Compare two expressions: homeomorphism verdict, then smooth verdict.
    Compare { left: String, right: String },
    /// Compute the orientation double cover of a non-orientable expression.
    Cover { expr: String },
    /// Rebuild a golden reproduction table: thm0, thmPr, thmM, thmInv,
    /// propValues, lemValues, or propComp.
    Tables { target: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
        }
    }
}

fn emit<T: Serialize + std::fmt::Display>(value: &T, format: Format) {
    match format {
        Format::Text => println!("{value}"),
        Format::Json => println!("{}", pretty_json(value)),
    }
}

fn parse_expr(text: &str) -> Result<Expr, i32> {
    dsl::parse(text).map_err(|err| match err.kind {
        dsl::ParseErrorKind::Syntax => {
            eprintln!("parse error at {err}");
            1
        }
        dsl::ParseErrorKind::Domain => {
            eprintln!("error at {err}");
            2
        }
    })
}

fn run(cli: Cli) -> i32 {
    let format = Format::from(cli.format);
    let bound = cli.oracle.then_some(cli.max_enum);
    match cli.command {
        Command::Eval { expr } => {
            let e = match parse_expr(&expr) {
                Ok(e) => e,
                Err(code) => return code,
            };
            match build_report(&e, bound) {
                Ok(report) => {
                    emit(&report, format);
                    if report.oracle_agrees == Some(false) {
                        eprintln!("error: engine profile disagrees with brute-force enumeration");
                        return 2;
                    }
                    0
                }
                Err(err) => {
                    eprintln!("error: {err}");
                    2
                }
            }
        }
        Command::Compare { left, right } => {
            let (l, r) = match (parse_expr(&left), parse_expr(&right)) {
                (Ok(l), Ok(r)) => (l, r),
                (Err(code), _) | (_, Err(code)) => return code,
            };
            match build_compare(&l, &r, bound) {
                Ok(report) => {
                    emit(&report, format);
                    if report.oracle_agrees == Some(false) {
                        eprintln!("error: engine profile disagrees with brute-force enumeration");
                        return 2;
                    }
                    0
                }
                Err(err) => {
                    eprintln!("error: {err}");
                    2
                }
            }
        }
        Command::Cover { expr } => {
            let e = match parse_expr(&expr) {
                Ok(e) => e,
                Err(code) => return code,
            };
            match build_cover(&e, bound) {
                Ok(report) => {
                    emit(&report, format);
                    0
                }
                Err(err) => {
                    eprintln!("error: {err}");
                    2
                }
            }
        }
        Command::Tables { target } => {
            let t: Target = match target.parse() {
                Ok(t) => t,
                Err(err) => {
                    eprintln!("usage error: {err}");
                    return 1;
                }
            };
            match reproduce(t, bound) {
                Ok(doc) => {
                    emit(&doc, format);
                    if doc.ok {
                        0
                    } else {
                        eprintln!("error: table {} deviates from its golden data", doc.target);
                        3
                    }
                }
                Err(err) => {
                    eprintln!("error: {err}");
                    2
                }
            }
        }
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            std::process::exit(code);
        }
    };
    std::process::exit(run(cli));
}
