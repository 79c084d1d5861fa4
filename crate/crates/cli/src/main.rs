mod commands;
mod error;
mod number;
mod report;
mod tables;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use umbral::series::SeriesControl;

use commands::{EvalArgs, Output, Point, SweepArgs};
use error::{usage, CliResult};
use number::NumArg;
use report::{Format, Report};
use tables::TableSpec;

const ROUTING: &str = "\
Numbers: integers and fractions such as 3 or -1/3 are exact and route through \
the rational oracle (certified series for Bessel-type functions); any number \
written with a decimal point or exponent, such as 0.1 or 2e-3, routes through \
the double-precision evaluators.

Exit codes: 0 ok, 1 table mismatch, 2 usage or parse error, 3 domain or numeric error.";

#[derive(Parser, Debug)]
#[command(name = "umbral", version, about = "Umbral evaluators and large-index approximations", after_help = ROUTING)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Markdown)]
    format: Format,
    /// Print numbers at full double precision.
    #[arg(long, global = true)]
    full: bool,
    /// Relative stopping tolerance for infinite series.
    #[arg(long, global = true, default_value = "1e-15")]
    tol: f64,
    /// Term cap for infinite series.
    #[arg(long, global = true, default_value_t = 200)]
    max_terms: usize,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct PointArgs {
    /// Degree or order.
    #[arg(long, default_value_t = 0)]
    n: u32,
    #[arg(long, allow_hyphen_values = true)]
    x: Option<NumArg>,
    #[arg(long, allow_hyphen_values = true)]
    y: Option<NumArg>,
    /// Laguerre index, Tricomi order, or Hermite-Bessel order.
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<NumArg>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a polynomial or Bessel-type function.
    #[command(after_help = ROUTING)]
    Eval {
        /// laguerre2, hermite2, hermitem, assoclaguerre, hybrid, besselj, besseli, tricomi, hermitebessel
        family: String,
        #[command(flatten)]
        point: PointArgs,
        /// Arguments of hermitem and hermitebessel, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        xs: Vec<NumArg>,
    },
    /// Compare an order-m approximation with the exact value.
    #[command(after_help = ROUTING)]
    Approx {
        /// laguerre2, assoclaguerre, hermite2, hybrid
        family: String,
        #[command(flatten)]
        point: PointArgs,
        /// Approximation order.
        #[arg(long, default_value_t = 1)]
        m: usize,
        /// Second-order J_0/J_2 form (laguerre2).
        #[arg(long)]
        j2: bool,
        /// Second-order closed Gaussian form (hermite2).
        #[arg(long)]
        closed: bool,
    },
    /// Recompute an accuracy table and compare it with the expected values.
    Table {
        /// Built-in table 1..5.
        id: Option<u8>,
        /// Load the table spec from a json file instead.
        #[arg(long, conflicts_with = "id")]
        spec: Option<PathBuf>,
    },
    /// Approximation reports over a grid of n and m, ordered by n then m.
    #[command(after_help = ROUTING)]
    Sweep {
        /// laguerre2, assoclaguerre, hermite2, hybrid
        family: String,
        /// n values: A, A..B, A..B:xK, A..B:+K or a comma list.
        #[arg(long)]
        n: String,
        /// m values, same syntax as --n.
        #[arg(long, default_value = "1")]
        m: String,
        #[arg(long, allow_hyphen_values = true)]
        x: NumArg,
        #[arg(long, allow_hyphen_values = true)]
        y: NumArg,
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<NumArg>,
        /// Read x as x*n (Laguerre) or y as n^2*y (Hermite, hybrid) so the
        /// scaled point stays fixed as n grows.
        #[arg(long)]
        scaled: bool,
    },
}

fn run(cli: Cli) -> CliResult<()> {
    let ctl = SeriesControl::new(cli.tol, SeriesControl::default().consecutive_small, cli.max_terms)
        .map_err(|e| usage(e.to_string()))?;
    let out = Output { full: cli.full, ctl };
    let mut mismatch = None;
    let report: Report = match cli.command {
        Command::Eval { family, point, xs } => commands::eval(
            &EvalArgs { family, n: point.n, x: point.x, y: point.y, alpha: point.alpha, xs },
            &out,
        )?,
        Command::Approx { family, point: p, m, j2, closed } => {
            let fam = commands::approx_family(&family, p.alpha.as_ref())?;
            let method = commands::method(m, j2, closed)?;
            let x = p.x.ok_or_else(|| usage("approx needs --x"))?;
            let y = p.y.ok_or_else(|| usage("approx needs --y"))?;
            let point = Point { x, y };
            let (r, route) = commands::run_approx(fam, p.n, &point, method, &out.ctl)?;
            let mut report = commands::approx_report();
            commands::push_approx(&mut report, &r, &point, route, &out);
            report
        }
        Command::Table { id, spec } => {
            let spec = match (id, spec) {
                (_, Some(path)) => TableSpec::parse(
                    &std::fs::read_to_string(&path)
                        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?,
                )?,
                (Some(id), None) => TableSpec::builtin(id)?,
                (None, None) => return Err(usage("table needs an id 1..5 or --spec <file>")),
            };
            let (report, failures) = tables::run(&spec, &out)?;
            if !failures.is_empty() {
                mismatch = Some(tables::mismatch(&spec, &failures));
            }
            report
        }
        Command::Sweep { family, n, m, x, y, alpha, scaled } => {
            commands::sweep(&SweepArgs { family, n, m, x, y, alpha, scaled }, &out)?
        }
    };
    let text = report.render(cli.format);
    match &cli.out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    mismatch.map_or(Ok(()), Err)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;
    use error::CliError;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn mismatch_maps_to_exit_one() {
        assert_eq!(CliError::Mismatch(String::new()).exit_code(), 1);
    }
}
