use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use sgc_cli::{
    builtin_pattern_listing, cmd_check, cmd_compute, cmd_dataset, emit, parse_measures, render,
    report, CliError, GraphFormat, GraphSource, MeasureSpec, OutputFormat, RunConfig,
    DEFAULT_MAX_ITERATIONS, DEFAULT_TOLERANCE,
};
use sgc_core::CorrelationMethod;

/// Subgraph-pattern eigenvector centralities for undirected graphs.
#[derive(Parser)]
#[command(name = "sgc", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute centrality measures and write a report.
    Compute(ComputeArgs),
    /// Certify pattern-connectivity and weak irreducibility for one pattern.
    Check(CheckArgs),
    /// Materialize a bundled dataset as an edge-list file.
    Dataset(DatasetArgs),
    /// List the builtin pattern tokens.
    Patterns,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Edgelist,
    Pajek,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutArg {
    Json,
    Csv,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum CorrArg {
    Pearson,
    Spearman,
}

#[derive(Args)]
struct GraphArgs {
    /// Graph file path, or `karate` for the bundled fixture.
    #[arg(long)]
    graph: String,
    /// Input file format.
    #[arg(long, value_enum, default_value = "edgelist")]
    format: FormatArg,
    /// Treat edge-list vertex ids as starting from 1.
    #[arg(long)]
    one_based: bool,
}

#[derive(Args)]
struct ComputeArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// Comma-separated measures: ec, dc, bc, sc, p2c, k2k3c, f[:pattern],
    /// k2f[:pattern].
    #[arg(long)]
    measure: String,
    /// Pattern token or template file for bare `f` / `k2f` measures.
    #[arg(long)]
    pattern: Option<String>,
    /// Convergence tolerance for the spectral measures.
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    tol: f64,
    /// Iteration cap for the spectral measures.
    #[arg(long, default_value_t = DEFAULT_MAX_ITERATIONS)]
    max_iter: usize,
    /// Output format.
    #[arg(long, value_enum, default_value = "json")]
    out: OutArg,
    /// Write the report here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Correlation method for the measure matrix.
    #[arg(long, value_enum, default_value = "pearson")]
    corr: CorrArg,
    /// Write a per-iteration bracket trace CSV to this path.
    #[arg(long)]
    trace_convergence: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// Pattern token or template file to certify.
    #[arg(long)]
    pattern: String,
    /// Write the document here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct DatasetArgs {
    /// Dataset name; `karate` is bundled.
    name: String,
    /// Destination path (defaults to ./karate.edges).
    #[arg(long)]
    output: Option<PathBuf>,
}

fn graph_source(arg: &str) -> GraphSource {
    if arg.eq_ignore_ascii_case("karate") {
        GraphSource::Karate
    } else {
        GraphSource::File(PathBuf::from(arg))
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Compute(args) => {
            let measures: Vec<MeasureSpec> = parse_measures(&args.measure)?;
            let config = RunConfig {
                source: graph_source(&args.graph.graph),
                format: match args.graph.format {
                    FormatArg::Edgelist => GraphFormat::EdgeList,
                    FormatArg::Pajek => GraphFormat::Pajek,
                },
                one_based: args.graph.one_based,
                pattern: args.pattern,
                measures,
                tolerance: args.tol,
                max_iterations: args.max_iter,
                output: match args.out {
                    OutArg::Json => OutputFormat::Json,
                    OutArg::Csv => OutputFormat::Csv,
                    OutArg::Table => OutputFormat::Table,
                },
                output_path: args.output,
                correlation: match args.corr {
                    CorrArg::Pearson => CorrelationMethod::Pearson,
                    CorrArg::Spearman => CorrelationMethod::Spearman,
                },
                trace_path: args.trace_convergence,
            };
            let doc = cmd_compute(&config)?;
            emit(&render(&doc, config.output), config.output_path.as_deref())
        }
        Command::Check(args) => {
            let mut config = RunConfig::new(graph_source(&args.graph.graph), Vec::new());
            config.format = match args.graph.format {
                FormatArg::Edgelist => GraphFormat::EdgeList,
                FormatArg::Pajek => GraphFormat::Pajek,
            };
            config.one_based = args.graph.one_based;
            config.pattern = Some(args.pattern);
            let doc = cmd_check(&config)?;
            emit(&report::to_json(&doc), args.output.as_deref())
        }
        Command::Dataset(args) => {
            let path = cmd_dataset(&args.name, args.output.as_deref())?;
            println!("{}", path.display());
            Ok(())
        }
        Command::Patterns => {
            print!("{}", builtin_pattern_listing());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
