use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;
mod fuzz;

/// Boundary measurements and Plücker coordinates of circular directed networks.
#[derive(Parser, Debug)]
#[command(name = "circnet", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a network document and summarize it.
    Validate { file: PathBuf },
    /// The maximal minor Δ_J of the boundary measurement matrix.
    Minor(MinorArgs),
    /// A single boundary measurement M_ij.
    Measure {
        file: PathBuf,
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
        /// Truncation degree of the walk series.
        #[arg(long, default_value_t = 10)]
        degree: u32,
        #[arg(long)]
        json: bool,
    },
    /// List flows (or alternating flows) from the sources to J.
    Flows {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        cols: Vec<usize>,
        #[arg(long)]
        alternating: bool,
    },
    /// List conservative flows and their generating function.
    Conservative { file: PathBuf },
    /// Rewrite into a perfectly oriented network; the trace goes next to OUT.
    Reduce {
        file: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Compare the flow formula with the walk-series minor.
    Verify {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        cols: Vec<usize>,
        #[arg(long, default_value_t = 10)]
        degree: u32,
    },
    /// Run the cross-checks on seeded random networks.
    Fuzz {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        count: usize,
        #[arg(long, default_value_t = 8)]
        degree: u32,
        /// Use a deliberately wrong sign rule, to see the harness fail.
        #[arg(long, hide = true)]
        mutant: bool,
    },
}

#[derive(Args, Debug)]
struct MinorArgs {
    file: PathBuf,
    #[arg(long, value_delimiter = ',', required = true)]
    cols: Vec<usize>,
    /// Also print the series expansion to this degree.
    #[arg(long)]
    series_degree: Option<u32>,
    /// Evaluate at `var=value,...` with rational values.
    #[arg(long)]
    specialize: Option<String>,
    /// Check the result against a closed form by cross-multiplication.
    #[arg(long, value_name = "EXPR")]
    reduced_check: Option<String>,
    #[arg(long)]
    json: bool,
}

/// Exit status of a completed command.
pub enum Status {
    Ok,
    Mismatch,
}

fn run(cli: Cli) -> anyhow::Result<Status> {
    match cli.command {
        Command::Validate { file } => commands::validate(&file),
        Command::Minor(args) => commands::minor(&args),
        Command::Measure {
            file,
            from,
            to,
            degree,
            json,
        } => commands::measure(&file, from, to, degree, json),
        Command::Flows {
            file,
            cols,
            alternating,
        } => commands::flows(&file, &cols, alternating),
        Command::Conservative { file } => commands::conservative(&file),
        Command::Reduce { file, out } => commands::reduce(&file, &out),
        Command::Verify { file, cols, degree } => commands::verify(&file, &cols, degree),
        Command::Fuzz {
            seed,
            count,
            degree,
            mutant,
        } => fuzz::run(seed, count, degree, mutant),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Mismatch) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
