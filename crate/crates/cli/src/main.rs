use std::io;
use std::num::NonZeroUsize;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use twenty_questions::{Order, Strategy};
use twenty_questions_cli::{
    cmd_analyze, cmd_compare, cmd_export_dot, cmd_play, cmd_simulate, cmd_uniform, emit, load_distribution, CliError,
    Format,
};

/// Yes/no questioning strategies as binary decision trees.
///
/// Exit codes: 0 ok, 2 parse error, 3 validation error, 4 capacity exceeded,
/// 5 interaction aborted, 6 I/O error.
#[derive(Parser)]
#[command(name = "tq", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact analysis of one strategy.
    Analyze {
        dist: PathBuf,
        #[command(flatten)]
        strategy: StrategyArgs,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
    /// Side-by-side table of every strategy.
    Compare {
        dist: PathBuf,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
    /// Play the game interactively: think of an outcome and answer y/n.
    Play {
        dist: PathBuf,
        #[command(flatten)]
        strategy: StrategyArgs,
    },
    /// Write a strategy's question tree as Graphviz DOT.
    ExportDot {
        dist: PathBuf,
        #[command(flatten)]
        strategy: StrategyArgs,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a uniform distribution file.
    Uniform {
        n: usize,
        #[arg(long, default_value = "box")]
        prefix: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monte-Carlo estimate of the expected number of questions.
    Simulate {
        dist: PathBuf,
        #[command(flatten)]
        strategy: StrategyArgs,
        #[arg(long, default_value_t = 1_000_000)]
        trials: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Worker threads; the result does not depend on this.
        #[arg(long)]
        threads: Option<NonZeroUsize>,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
}

#[derive(Args)]
struct StrategyArgs {
    #[arg(long, value_enum, default_value_t = StrategyArg::Huffman)]
    strategy: StrategyArg,
    /// Question order for the sequential strategy.
    #[arg(long, value_enum, default_value_t = OrderArg::Input)]
    order: OrderArg,
}

impl StrategyArgs {
    fn resolve(&self) -> Strategy {
        match self.strategy {
            StrategyArg::Sequential => Strategy::Sequential(match self.order {
                OrderArg::Input => Order::Input,
                OrderArg::Descending => Order::Descending,
            }),
            StrategyArg::Division => Strategy::Division,
            StrategyArg::ShannonFano => Strategy::ShannonFano,
            StrategyArg::Huffman => Strategy::Huffman,
            StrategyArg::Optimal => Strategy::Optimal,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Sequential,
    Division,
    ShannonFano,
    Huffman,
    Optimal,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    Input,
    Descending,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Machine,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Machine => Format::Machine,
        }
    }
}

fn run(cli: Cli) -> Result<Option<String>, CliError> {
    match cli.command {
        Command::Analyze { dist, strategy, format } => {
            let d = load_distribution(&dist)?;
            cmd_analyze(&d, strategy.resolve(), format.into()).map(Some)
        }
        Command::Compare { dist, format } => {
            let d = load_distribution(&dist)?;
            cmd_compare(&d, format.into()).map(Some)
        }
        Command::Play { dist, strategy } => {
            let d = load_distribution(&dist)?;
            cmd_play(&d, strategy.resolve(), io::stdin().lock(), io::stdout().lock())?;
            Ok(None)
        }
        Command::ExportDot { dist, strategy, out } => {
            let d = load_distribution(&dist)?;
            emit(cmd_export_dot(&d, strategy.resolve())?, out.as_deref())
        }
        Command::Uniform { n, prefix, out } => emit(cmd_uniform(n, &prefix)?, out.as_deref()),
        Command::Simulate { dist, strategy, trials, seed, threads, format } => {
            let d = load_distribution(&dist)?;
            let threads = threads.or_else(|| std::thread::available_parallelism().ok()).map_or(1, NonZeroUsize::get);
            cmd_simulate(&d, strategy.resolve(), trials, seed, threads, format.into()).map(Some)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(Some(text)) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Ok(None) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
