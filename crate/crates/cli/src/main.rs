use std::process::ExitCode;

use boole_cli::commands::{self, CliError, IntegrateArgs, ReportFormat, TableFormat};
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "boole",
    version,
    about = "Boole's rule with Peano-kernel error bounds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact certificate for the order 1..3 kernels on [a, b].
    VerifyKernels {
        /// Left endpoint, integer or p/q.
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        a: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        b: String,
        /// Check a single order instead of all three.
        #[arg(long)]
        order: Option<u32>,
    },
    /// Bounds for t^k on [0, b], k = 6..=kmax, against the classical bound.
    Table {
        #[arg(long, default_value_t = 30)]
        kmax: u32,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        b: String,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
    },
    /// Composite Boole value of an expression in t, with optional bounds.
    Integrate {
        #[arg(long)]
        expr: String,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, default_value_t = 1)]
        panels: usize,
        /// Derivative statistics `order:m:M:I` (repeatable); fields are
        /// constant expressions such as `exp(1)-1`.
        #[arg(long, allow_hyphen_values = true)]
        stats: Vec<String>,
        /// Comma-separated estimates, e.g. `t1m,t2M`. Defaults to every
        /// estimate whose order has statistics.
        #[arg(long)]
        estimates: Option<String>,
        /// The statistics were sampled, not derived; the report is not a certificate.
        #[arg(long)]
        heuristic: bool,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
    },
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::VerifyKernels { a, b, order } => {
            let outcome = commands::verify_kernels(&a, &b, order)?;
            print!("{}", outcome.stdout);
            Ok(outcome.exit_code)
        }
        Command::Table { kmax, b, format } => {
            print!("{}", commands::table(kmax, &b, format)?);
            Ok(0)
        }
        Command::Integrate {
            expr,
            a,
            b,
            panels,
            stats,
            estimates,
            heuristic,
            format,
        } => {
            let args = IntegrateArgs {
                expr,
                a,
                b,
                panels,
                stats,
                estimates,
                heuristic,
                format,
            };
            print!("{}", commands::integrate(&args)?);
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let code = match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("boole: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
