use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};

use mlgraph::cli::aggregate::{aggregate, read_rows, write_aggregate, AggregateMode};
use mlgraph::cli::analyze::{analyze_corpus, write_outputs, AnalyzeOptions};
use mlgraph::cli::config::{RunConfig, Sampling, DEFAULT_PER_DREAMER_CAP};
use mlgraph::cli::corpus::read_corpus;
use mlgraph::cli::inspect::{inspect, load_hierarchy, RenderFormat};
use mlgraph::NodeId;

#[derive(Parser)]
#[command(name = "mlgraph", version, about = "Multilevel graph analysis of narrative corpora")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build and measure a contraction hierarchy for every dream in a corpus.
    Analyze {
        /// JSON Lines corpus, one {dreamer, group?, id, text} object per line.
        #[arg(long)]
        corpus: PathBuf,
        /// JSON run config; built-in defaults when omitted.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Sampling seed. Turns on per-dreamer sampling if the config has none.
        #[arg(long)]
        seed: Option<u64>,
        /// Also write each hierarchy as JSON under <out>/hierarchies.
        #[arg(long)]
        hierarchies: bool,
    },
    /// Average metrics.csv rows per dreamer or over equally weighted dreamers.
    Aggregate {
        #[arg(long)]
        rows: PathBuf,
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long)]
        out: PathBuf,
        /// Entity name written in pooled rows.
        #[arg(long, default_value = "pooled")]
        entity: String,
    },
    /// Print one level of a saved hierarchy, or one node and its trace.
    Inspect {
        #[arg(long)]
        hierarchy: PathBuf,
        #[arg(long)]
        level: usize,
        #[arg(long)]
        node: Option<u64>,
        #[arg(long)]
        dot: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    PerDreamer,
    Pooled,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            // Library errors already embed their cause; skip repeated links.
            let mut msg = e.to_string();
            for cause in e.chain().skip(1) {
                let cause = cause.to_string();
                if !msg.contains(&cause) {
                    msg = format!("{msg}: {cause}");
                }
            }
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Analyze {
            corpus,
            config,
            out,
            jobs,
            seed,
            hierarchies,
        } => {
            let mut cfg = match &config {
                Some(path) => RunConfig::load(path).with_context(|| format!("loading {}", path.display()))?,
                None => RunConfig::default(),
            };
            if let Some(seed) = seed {
                let cap = cfg.sampling.map_or(DEFAULT_PER_DREAMER_CAP, |s| s.per_dreamer_cap);
                cfg.sampling = Some(Sampling { per_dreamer_cap: cap, seed });
            }
            let records = read_corpus(&corpus)?;
            let opts = AnalyzeOptions {
                jobs,
                keep_hierarchies: hierarchies,
            };
            let analysis = analyze_corpus(&records, &cfg, opts)?;
            write_outputs(&analysis, &out)?;
            log::info!(
                "{} dreams analyzed, {} rejected, {} failed",
                analysis.results.len(),
                analysis.rejected.len(),
                analysis.failed.len()
            );
            if analysis.is_partial() {
                eprintln!("{} dreams failed; see rejected.csv", analysis.failed.len());
                return Ok(ExitCode::from(2));
            }
        }
        Command::Aggregate { rows, mode, out, entity } => {
            let file = std::fs::File::open(&rows).with_context(|| format!("opening {}", rows.display()))?;
            let table = read_rows(std::io::BufReader::new(file))?;
            let mode = match mode {
                Mode::PerDreamer => AggregateMode::PerDreamer,
                Mode::Pooled => AggregateMode::Pooled,
            };
            let file = std::fs::File::create(&out).with_context(|| format!("creating {}", out.display()))?;
            write_aggregate(&aggregate(&table, mode, &entity), std::io::BufWriter::new(file))?;
        }
        Command::Inspect {
            hierarchy,
            level,
            node,
            dot,
        } => {
            let m = load_hierarchy(&hierarchy)?;
            let format = if dot { RenderFormat::Dot } else { RenderFormat::Text };
            print!("{}", inspect(&m, level, node.map(NodeId), format)?);
        }
    }
    Ok(ExitCode::SUCCESS)
}
