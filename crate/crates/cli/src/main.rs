use std::path::PathBuf;
use std::process::ExitCode;

use clap::{CommandFactory, Parser, Subcommand, ValueEnum};
use tau_analysis::NormKind;
use tau_cli::{run, CliConfig, CliError, Command, Format};

#[derive(Parser)]
#[command(name = "tau", version, about = "Exact tau-method solver for linear ODE initial value problems")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Solve the problem and print y_n, the tau values and the method parameters.
    Solve(Args),
    /// Tabulate optimality ratios against the Taylor reference solution.
    Analyze(Args),
    /// Print the Taylor reference polynomial of degree --degree.
    Taylor(Args),
}

#[derive(clap::Args)]
struct Args {
    /// Problem file.
    file: PathBuf,
    /// Degree n, overriding the file.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    degree: Option<u64>,
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    /// Working precision of the analysis in bits.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    precision_bits: Option<u64>,
    /// Number of Chebyshev-Lobatto sample points.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    grid: Option<u64>,
    /// Norm used by `analyze`.
    #[arg(long, value_enum, default_value_t = NormArg::Sup)]
    norm: NormArg,
    /// Write output here instead of standard output.
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum NormArg {
    Sup,
    WeightedL2,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, args) = match cli.command {
        Sub::Solve(a) => (Command::Solve, a),
        Sub::Analyze(a) => (Command::Analyze, a),
        Sub::Taylor(a) => (Command::Taylor, a),
    };
    let config = CliConfig {
        command,
        input_path: args.file,
        degree_override: args.degree.map(|d| d as usize),
        format: match args.format {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
        },
        precision_bits: args.precision_bits.map(|b| b as usize),
        grid_size: args.grid.map(|g| g as usize),
        output_path: args.output,
        norm: match args.norm {
            NormArg::Sup => NormKind::Sup,
            NormArg::WeightedL2 => NormKind::WeightedL2,
        },
    };
    match run(&config) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            let _ = Cli::command().error(clap::error::ErrorKind::MissingRequiredArgument, msg).print();
            ExitCode::from(2)
        }
        Err(err) => {
            eprintln!("tau: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
