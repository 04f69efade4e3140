//! `halfspace report` and `halfspace verify`.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error.

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use halfspace::report::build_report;
use halfspace::verify::{run_verify, Scope, Size, Suite};
use halfspace::Weight;

#[derive(Parser)]
#[command(name = "halfspace", version, about = "Filtration data for homogeneous bundles on projective space")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Weights,
    Bott,
    Pieri,
    Filtration,
    Localcoh,
    Building,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum SizeArg {
    Smoke,
    Desk,
}

#[derive(Subcommand)]
enum Command {
    /// Print the filtration report for one bundle.
    Report {
        #[arg(long)]
        d: usize,
        /// Comma-separated weight `λ_0,…,λ_d`.
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        /// Degree bound for the kernel characters.
        #[arg(long, default_value_t = 3)]
        pole_bound: i64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run property suites and exit nonzero on any failure.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        #[arg(long, value_enum, default_value_t = SizeArg::Smoke)]
        size: SizeArg,
        /// Restrict the finite-module checks to this prime.
        #[arg(long)]
        p: Option<u64>,
        /// Restrict the finite-module checks to this exponent.
        #[arg(long)]
        n: Option<u32>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

fn usage_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

/// Writes a document to standard output; a closed pipe is not an error.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Report { d, lambda, pole_bound, format } => {
            let lambda: Weight = match lambda.parse() {
                Ok(w) => w,
                Err(e) => return usage_error(e),
            };
            match build_report(d, &lambda, pole_bound) {
                Ok(doc) => {
                    emit(&match format {
                        Format::Json => doc.to_json() + "\n",
                        Format::Text => doc.to_text(),
                    });
                    ExitCode::SUCCESS
                }
                Err(e) => usage_error(e),
            }
        }
        Command::Verify { suite, size, p, n, format } => {
            if let Some(p) = p {
                if p < 2 || (2..p).take_while(|k| k * k <= p).any(|k| p % k == 0) {
                    return usage_error(format!("--p {p} is not a prime"));
                }
            }
            if n == Some(0) {
                return usage_error("--n must be at least 1");
            }
            let suites: Vec<Suite> = match suite {
                SuiteArg::Weights => vec![Suite::Weights],
                SuiteArg::Bott => vec![Suite::Bott],
                SuiteArg::Pieri => vec![Suite::Pieri],
                SuiteArg::Filtration => vec![Suite::Filtration],
                SuiteArg::Localcoh => vec![Suite::Localcoh],
                SuiteArg::Building => vec![Suite::Building],
                SuiteArg::All => Suite::ALL.to_vec(),
            };
            let size = match size {
                SizeArg::Smoke => Size::Smoke,
                SizeArg::Desk => Size::Desk,
            };
            let report = run_verify(&suites, &Scope { size, p, n });
            emit(&match format {
                Format::Json => report.to_json() + "\n",
                Format::Text => report.to_text(),
            });
            if report.passed {
                ExitCode::SUCCESS
            } else {
                for c in report.checks.iter().filter(|c| !c.passed()) {
                    eprintln!("failed: {}/{}", c.suite.name(), c.name);
                }
                ExitCode::from(1)
            }
        }
    }
}
