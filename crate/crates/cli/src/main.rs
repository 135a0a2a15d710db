use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use tridct_cli::commands::{self, CliResult, GraphFormat, MatrixFormat, Outcome, Which};

#[derive(Parser)]
#[command(name = "tridct", version, about = "Cosine transform on triangle lattices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the sampling nodes as CSV.
    Nodes {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Dump one of the transform matrices.
    Matrix {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(long, ignore_case = true)]
        which: WhichArg,
        #[arg(long, default_value = "csv")]
        format: MatrixFormatArg,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Signal file to spectrum file.
    Forward {
        #[command(flatten)]
        io: IoArgs,
    },
    /// Spectrum file to signal file.
    Inverse {
        #[command(flatten)]
        io: IoArgs,
    },
    /// Keep the largest spectrum coefficients and reconstruct.
    Compress {
        #[command(flatten)]
        io: IoArgs,
        /// Fraction of coefficients to keep, in (0, 1].
        #[arg(long, value_parser = parse_keep)]
        keep: f64,
    },
    /// Run the self-checks for every size up to n-max.
    Verify {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n_max: u32,
    },
    /// Export the shift graph.
    Graph {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(long, default_value = "dot")]
        format: GraphFormatArg,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(clap::Args)]
struct IoArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    output: Option<PathBuf>,
    /// Expected size; checked against the file header.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    n: Option<u32>,
}

#[derive(Clone, Copy, ValueEnum)]
enum WhichArg {
    #[value(name = "F")]
    F,
    #[value(name = "Finv")]
    Finv,
    #[value(name = "Forth")]
    Forth,
    #[value(name = "H")]
    H,
    #[value(name = "D")]
    D,
}

#[derive(Clone, Copy, ValueEnum)]
enum MatrixFormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormatArg {
    Dot,
    Json,
}

fn parse_keep(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v > 0.0 && v <= 1.0 {
        Ok(v)
    } else {
        Err(format!("must satisfy 0 < keep <= 1, got {s}"))
    }
}

fn run(cli: Cli) -> CliResult<(Outcome, Option<PathBuf>)> {
    let n_opt = |n: Option<u32>| n.map(|v| v as usize);
    Ok(match cli.command {
        Command::Nodes { n, output } => (commands::nodes(n as usize)?, output),
        Command::Matrix { n, which, format, output } => {
            let which = match which {
                WhichArg::F => Which::F,
                WhichArg::Finv => Which::Finv,
                WhichArg::Forth => Which::Forth,
                WhichArg::H => Which::H,
                WhichArg::D => Which::D,
            };
            let format = match format {
                MatrixFormatArg::Csv => MatrixFormat::Csv,
                MatrixFormatArg::Json => MatrixFormat::Json,
            };
            (commands::matrix(n as usize, which, format)?, output)
        }
        Command::Forward { io } => (commands::forward(&io.input, n_opt(io.n))?, io.output),
        Command::Inverse { io } => (commands::inverse(&io.input, n_opt(io.n))?, io.output),
        Command::Compress { io, keep } => {
            (commands::compress(&io.input, n_opt(io.n), keep)?, io.output)
        }
        Command::Verify { n_max } => {
            let tol = commands::tolerance_from_env()?;
            (commands::run_verify(n_max as usize, tol)?, None)
        }
        Command::Graph { n, format, output } => {
            let format = match format {
                GraphFormatArg::Dot => GraphFormat::Dot,
                GraphFormatArg::Json => GraphFormat::Json,
            };
            (commands::graph(n as usize, format)?, output)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (outcome, output) = match run(cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    for note in &outcome.notes {
        eprintln!("{note}");
    }
    match output {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, &outcome.body) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None => print!("{}", outcome.body),
    }
    if outcome.success {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
