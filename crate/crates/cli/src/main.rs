use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rootscope_cli::commands::{self, Which};
use rootscope_cli::{CliError, Format};

/// Roots of z^(n+1) = (1+z)^n: solving, asymptotic tables, theorem checks.
#[derive(Debug, Parser)]
#[command(name = "rootscope", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print every root of one instance.
    Solve {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Print one real root per n next to its asymptotic approximation.
    Table {
        #[arg(long, value_enum)]
        which: Which,
        #[arg(long, value_delimiter = ',', required = true)]
        ns: Vec<u32>,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Check every root-location theorem for n = 1..=n_max.
    Verify {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=300))]
        n_max: u32,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Compare the two readings of the complex-root approximant.
    Fit {
        #[arg(long)]
        n_min: u32,
        #[arg(long)]
        n_max: u32,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

fn run(cli: Cli, out: &mut dyn Write) -> rootscope_cli::Result<()> {
    match cli.command {
        Command::Solve { n, tol, format } => commands::solve(n, tol, format, out),
        Command::Table {
            which,
            ns,
            tol,
            format,
        } => commands::table(which, &ns, tol, format, out),
        Command::Verify { n_max, tol } => commands::verify(n_max, tol, out),
        Command::Fit { n_min, n_max, format } => commands::fit(n_min, n_max, format, out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = run(cli, &mut out);
    let flushed = out.flush();
    match result.and(flushed.map_err(CliError::from)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("rootscope: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
