use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use gabor_lattice::report::{
    batch_exit_code, batch_to_json, batch_to_text, parse_batch, parse_inline, parse_lattice,
};
use gabor_lattice::{analyze_with, run_batch, AnalyzeOptions, Error, Execution};

#[derive(Parser, Debug)]
#[command(author, version, about, long_about = None)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute lattice invariants and the Schwartz frame decision
    Analyze(AnalyzeArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args, Debug)]
#[command(group(clap::ArgGroup::new("source").required(true).args(["input", "matrix", "batch"])))]
struct AnalyzeArgs {
    /// Lattice document (JSON) or inline matrix text
    #[arg(long)]
    input: Option<PathBuf>,

    /// Inline matrix: rows separated by `;`, entries by `,`
    #[arg(long, allow_hyphen_values = true)]
    matrix: Option<String>,

    /// Half-dimension d for --matrix (inferred from the row count if omitted)
    #[arg(long, requires = "matrix")]
    d: Option<usize>,

    /// JSON array of lattice documents or inline strings
    #[arg(long)]
    batch: Option<PathBuf>,

    /// Treat the lattice as non-rational (n_Gamma infinite)
    #[arg(long)]
    nonrational: bool,

    #[arg(long, value_enum, default_value = "text")]
    format: Format,

    /// Cross-check with Smith normal form and a brute-force subgroup scan
    #[arg(long)]
    oracle: bool,

    /// Disable data-parallel evaluation
    #[arg(long)]
    sequential: bool,
}

fn read(path: &PathBuf) -> Result<String, Error> {
    fs::read_to_string(path)
        .map_err(|e| Error::Document(format!("cannot read {}: {e}", path.display())))
}

fn run(args: AnalyzeArgs) -> Result<i32, Error> {
    let opts = AnalyzeOptions {
        oracle: args.oracle,
        exec: if args.sequential {
            Execution::Sequential
        } else {
            Execution::Parallel
        },
        ..AnalyzeOptions::default()
    };

    if let Some(path) = &args.batch {
        let inputs = parse_batch(&read(path)?)?;
        let results = run_batch(&inputs, &opts);
        let out = match args.format {
            Format::Json => batch_to_json(&results),
            Format::Text => batch_to_text(&results),
        };
        println!("{}", out.trim_end());
        return Ok(batch_exit_code(&results));
    }

    let lattice = match (&args.input, &args.matrix) {
        (Some(path), _) => parse_lattice(&read(path)?)?,
        (None, Some(m)) => parse_inline(m, args.d)?,
        (None, None) => unreachable!("clap enforces one source"),
    };
    let lattice = if args.nonrational {
        lattice.declared_nonrational(true)
    } else {
        lattice
    };
    let report = analyze_with(&lattice, &opts)?;
    let record = report.to_record();
    let out = match args.format {
        Format::Json => record.to_json(),
        Format::Text => record.to_text(),
    };
    println!("{}", out.trim_end());
    Ok(report.exit_code())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Analyze(args) => match run(args) {
            Ok(code) => code,
            Err(e) => {
                eprintln!("error: {e}");
                e.exit_code()
            }
        },
    };
    ExitCode::from(code as u8)
}
