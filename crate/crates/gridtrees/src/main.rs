//! Command-line interface: exact tables, Monte Carlo sampling, limit
//! constants, and the cross-module verification suite.
//!
//! Exit codes: 0 success, 1 usage error, 2 resource limit, 3 verification
//! or internal-consistency failure.

use clap::{Parser, Subcommand, ValueEnum};
use gridtrees::error::Error;
use gridtrees::grid::GridGraph;
use gridtrees::report::{
    build_table, limits_report, mst_exact_row, ust_exact_row, MstMethodChoice, OutputFormat,
    MST_CSV_HEADER, UST_CSV_HEADER,
};
use gridtrees::sampling::{
    estimate_balance_probability, Distribution, MonteCarloSummary, SUMMARY_CSV_HEADER,
};
use gridtrees::verify::verify;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "gridtrees",
    version,
    about = "Balance probabilities for random spanning trees of the 2-by-n grid"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Text,
    Csv,
    Json,
}

impl From<FormatArg> for OutputFormat {
    fn from(value: FormatArg) -> Self {
        match value {
            FormatArg::Text => OutputFormat::Text,
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Json => OutputFormat::Json,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DistArg {
    Ust,
    Mst,
}

impl From<DistArg> for Distribution {
    fn from(value: DistArg) -> Self {
        match value {
            DistArg::Ust => Distribution::Ust,
            DistArg::Mst => Distribution::Mst,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    Auto,
    Extensions,
    Bruteforce,
}

impl From<MethodArg> for MstMethodChoice {
    fn from(value: MethodArg) -> Self {
        match value {
            MethodArg::Auto => MstMethodChoice::Auto,
            MethodArg::Extensions => MstMethodChoice::Extensions,
            MethodArg::Bruteforce => MstMethodChoice::Bruteforce,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Exact UST balance probabilities: T_n, S_n, and the reduced ratio
    UstExact {
        /// Single column count
        #[arg(long, conflicts_with = "max_n")]
        n: Option<usize>,
        /// Report every n from 1 to this bound
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// Exact MST balance probability for one grid
    MstExact {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "auto")]
        method: MethodArg,
        /// Poset-size ceiling for the linear-extension method
        #[arg(long, default_value_t = gridtrees::mst_exact::DEFAULT_EXTENSION_LIMIT)]
        extension_limit: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// Monte Carlo estimate of the balance probability
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        dist: DistArg,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// The full even/odd table: exact UST, exact-or-sampled MST
    Table {
        #[arg(long, default_value_t = 19)]
        max_n: usize,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Largest n whose MST cell is computed exactly
        #[arg(long, default_value_t = 5)]
        exact_mst_max: usize,
        #[arg(long, default_value_t = gridtrees::mst_exact::DEFAULT_EXTENSION_LIMIT)]
        extension_limit: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// The two limit constants and the per-n gap to them
    Limits {
        #[arg(long, default_value_t = 19)]
        max_n: usize,
    },
    /// Run every cross-module invariant check
    Verify {
        #[arg(long, default_value_t = 8)]
        max_n: usize,
    },
}

fn exit_code_for(err: &Error) -> ExitCode {
    match err {
        Error::InvalidArgument(_) => ExitCode::from(1),
        Error::ResourceLimit(_) => ExitCode::from(2),
        Error::Computation(_) => ExitCode::from(3),
    }
}

fn print_summary(summary: &MonteCarloSummary, format: OutputFormat) {
    match format {
        OutputFormat::Text => {
            println!(
                "n={} dist={} samples={} successes={} estimate={} stderr={:.6e} ci95=[{:.6}, {:.6}] seed={}",
                summary.n,
                summary.distribution,
                summary.samples,
                summary.successes,
                summary.estimate_6dp(),
                summary.std_error,
                summary.ci95_low,
                summary.ci95_high,
                summary.seed
            );
        }
        OutputFormat::Csv => {
            println!("{SUMMARY_CSV_HEADER}");
            println!("{}", summary.csv_row());
        }
        OutputFormat::Json => {
            println!(
                "{}",
                serde_json::to_string_pretty(summary).expect("summary serializes")
            );
        }
    }
}

fn run(command: Command) -> Result<(), Error> {
    match command {
        Command::UstExact { n, max_n, format } => {
            let range = match (n, max_n) {
                (Some(single), None) => single..=single,
                (None, Some(top)) => 1..=top,
                (None, None) => {
                    return Err(Error::invalid("pass --n or --max-n"));
                }
                (Some(_), Some(_)) => unreachable!("clap rejects the conflict"),
            };
            let rows = range
                .map(ust_exact_row)
                .collect::<Result<Vec<_>, Error>>()?;
            match OutputFormat::from(format) {
                OutputFormat::Text => {
                    for row in &rows {
                        println!("{}", row.text_line());
                    }
                }
                OutputFormat::Csv => {
                    println!("{UST_CSV_HEADER}");
                    for row in &rows {
                        println!("{}", row.csv_row());
                    }
                }
                OutputFormat::Json => {
                    let values: Vec<_> = rows.iter().map(|r| r.to_json()).collect();
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&values).expect("rows serialize")
                    );
                }
            }
            Ok(())
        }
        Command::MstExact {
            n,
            method,
            extension_limit,
            format,
        } => {
            let row = mst_exact_row(n, method.into(), extension_limit)?;
            match OutputFormat::from(format) {
                OutputFormat::Text => println!("{}", row.text_line()),
                OutputFormat::Csv => {
                    println!("{MST_CSV_HEADER}");
                    println!("{}", row.csv_row());
                }
                OutputFormat::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&row.to_json()).expect("row serializes")
                ),
            }
            Ok(())
        }
        Command::Sample {
            n,
            dist,
            samples,
            seed,
            format,
        } => {
            let grid = GridGraph::new(n)?;
            let summary =
                estimate_balance_probability(&grid, dist.into(), samples, seed)?;
            print_summary(&summary, format.into());
            Ok(())
        }
        Command::Table {
            max_n,
            samples,
            seed,
            exact_mst_max,
            extension_limit,
            format,
        } => {
            let table = build_table(max_n, samples, seed, exact_mst_max, extension_limit)?;
            match OutputFormat::from(format) {
                OutputFormat::Text => print!("{}", table.to_text()),
                OutputFormat::Csv => print!("{}", table.to_csv()),
                OutputFormat::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&table.to_json())
                        .expect("table serializes")
                ),
            }
            Ok(())
        }
        Command::Limits { max_n } => {
            if max_n == 0 {
                return Err(Error::invalid("limits needs max_n >= 1"));
            }
            print!("{}", limits_report(max_n));
            Ok(())
        }
        Command::Verify { max_n } => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            let passed = verify(max_n, &mut lock).map_err(|e| {
                Error::Computation(format!("could not write verification report: {e}"))
            })?;
            if passed {
                Ok(())
            } else {
                Err(Error::Computation("verification failed".into()))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let kind = err.kind();
            let _ = err.print();
            return if matches!(kind, ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            exit_code_for(&err)
        }
    }
}
