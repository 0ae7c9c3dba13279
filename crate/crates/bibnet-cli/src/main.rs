//! `bibnet` — bibliometric network analysis from the command line.
//!
//! One analysis per invocation; results are emitted as a deterministic
//! JSON-shaped report on standard output (or `--out`), graph exports as
//! DOT/GraphML documents. Exit codes: 0 success, 1 computation or input
//! failure, 2 usage error.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod report;

use commands::{resolve_out_path, Failure, Output};

#[derive(Parser)]
#[command(
    name = "bibnet",
    version,
    about = "Bibliometric network analysis: citation walks, coupling, co-citation, journal ranking, co-authorship metrics, LSA, and science maps"
)]
pub struct Cli {
    /// Write the report to this path instead of standard output (relative
    /// paths are resolved against BIBNET_OUT_DIR when set).
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Suppress progress messages on standard error.
    #[arg(long, global = true)]
    quiet: bool,

    /// Include elapsed wall time in the report. Off by default so repeated
    /// runs stay byte-identical.
    #[arg(long, global = true)]
    timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Bibliographic coupling strengths (shared references per article pair)
    Coupling(CouplingArgs),
    /// Co-citation strengths (shared citers per source pair)
    Cocite(CociteArgs),
    /// Relative similarity of reference sets
    Similarity(SimilarityArgs),
    /// Random reader walk over a citation graph
    Reader(ReaderArgs),
    /// Directed path counts of a fixed length
    Paths(PathsArgs),
    /// Search path counts and the main path of a citation DAG
    Mainpath(MainpathArgs),
    /// Journal prestige weights
    Rank(RankArgs),
    /// Import-export citation ratios per journal
    Importexport(ImportexportArgs),
    /// Ego citation environments of one journal
    Ego(EgoArgs),
    /// Co-authorship network metrics
    Coauthor(CoauthorArgs),
    /// Latent semantic embedding of a text corpus
    Lsa(LsaArgs),
    /// Term co-occurrence matrix of a text corpus
    Coword(CowordArgs),
    /// Threshold, cluster, and aggregate a co-citation network
    Cluster(ClusterArgs),
    /// Export a graph to DOT or GraphML
    Export(ExportArgs),
}

#[derive(Args)]
pub struct CouplingArgs {
    /// Affiliation TSV (or a citation edge list with --from-edges)
    pub input: PathBuf,
    /// Treat the input as a citation edge list
    #[arg(long)]
    pub from_edges: bool,
    /// Use scalar products of weighted entries instead of binary counts
    #[arg(long)]
    pub weighted: bool,
    /// Zero the self-coupling diagonal in the output
    #[arg(long)]
    pub mask_diagonal: bool,
}

#[derive(Args)]
pub struct CociteArgs {
    /// Affiliation TSV (or a citation edge list with --from-edges)
    pub input: PathBuf,
    /// Treat the input as a citation edge list
    #[arg(long)]
    pub from_edges: bool,
    /// Use scalar products of weighted entries instead of binary counts
    #[arg(long)]
    pub weighted: bool,
    /// Also list pairs co-cited significantly more often than independent
    /// citation processes would produce, at this significance level
    #[arg(long)]
    pub alpha: Option<f64>,
}

#[derive(Args)]
pub struct SimilarityArgs {
    /// Citation edge list (or an affiliation TSV with --affiliation)
    pub input: PathBuf,
    #[arg(long, value_enum)]
    pub index: IndexKind,
    /// Treat the input as an affiliation TSV and compare its rows
    #[arg(long)]
    pub affiliation: bool,
}

#[derive(Args)]
pub struct ReaderArgs {
    /// Citation edge list
    pub input: PathBuf,
    /// Start article
    #[arg(long)]
    pub start: String,
    /// Number of steps
    #[arg(long)]
    pub steps: usize,
    /// Walk toward citers (temporally forward) instead of cited sources
    #[arg(long)]
    pub forward: bool,
}

#[derive(Args)]
pub struct PathsArgs {
    /// Citation edge list
    pub input: PathBuf,
    /// Path length (0 yields the identity)
    #[arg(long)]
    pub k: usize,
}

#[derive(Args)]
pub struct MainpathArgs {
    /// Citation edge list (must be acyclic)
    pub input: PathBuf,
}

#[derive(Args)]
pub struct RankArgs {
    /// Labeled square count matrix CSV (or an edge list with --edges)
    pub input: PathBuf,
    #[arg(long, value_enum)]
    pub method: RankMethod,
    /// Teleport damping for PageRank (default 0.85)
    #[arg(long)]
    pub damping: Option<f64>,
    /// Convergence tolerance on the iterate change (default 1e-10)
    #[arg(long)]
    pub tolerance: Option<f64>,
    /// Iteration budget (default 10000)
    #[arg(long)]
    pub max_iterations: Option<usize>,
    /// Drop the self-citation diagonal before ranking
    #[arg(long)]
    pub no_self_citations: bool,
    /// Treat the input as a citation edge list (PageRank only)
    #[arg(long)]
    pub edges: bool,
}

#[derive(Args)]
pub struct ImportexportArgs {
    /// Labeled square count matrix CSV
    pub input: PathBuf,
    /// Drop the self-citation diagonal first
    #[arg(long)]
    pub no_self_citations: bool,
}

#[derive(Args)]
pub struct EgoArgs {
    /// Labeled square count matrix CSV
    pub input: PathBuf,
    /// Journal whose citation environments to extract
    #[arg(long)]
    pub seed: String,
}

#[derive(Args)]
pub struct CoauthorArgs {
    /// Author-paper affiliation TSV
    pub input: PathBuf,
    #[arg(long, value_enum)]
    pub metric: CoauthorMetric,
    /// Normalize betweenness by (n-1)(n-2)/2
    #[arg(long)]
    pub normalized: bool,
}

#[derive(Args)]
pub struct LsaArgs {
    /// Corpus: one document per line, UTF-8 plain text
    pub input: PathBuf,
    /// Embedding rank
    #[arg(long)]
    pub k: usize,
    /// Stop word file, one token per line (defaults to the built-in
    /// English list)
    #[arg(long)]
    pub stopwords: Option<PathBuf>,
    /// Drop terms occurring fewer times than this across the corpus
    #[arg(long, default_value_t = 1)]
    pub min_frequency: u64,
}

#[derive(Args)]
pub struct CowordArgs {
    /// Corpus: one document per line, UTF-8 plain text
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = CowordModeArg::Binary)]
    pub mode: CowordModeArg,
    /// Stop word file, one token per line
    #[arg(long)]
    pub stopwords: Option<PathBuf>,
    /// Drop terms occurring fewer times than this across the corpus
    #[arg(long, default_value_t = 1)]
    pub min_frequency: u64,
}

#[derive(Args)]
pub struct ClusterArgs {
    /// Affiliation TSV (or a citation edge list with --from-edges)
    pub input: PathBuf,
    /// Keep only sources cited at least this often
    #[arg(long, default_value_t = 0)]
    pub threshold: u64,
    /// Stop merging when the best similarity falls below this cut
    #[arg(long)]
    pub cut: f64,
    #[arg(long, value_enum, default_value_t = LinkageArg::Single)]
    pub linkage: LinkageArg,
    /// Co-citation strength measure to cluster on
    #[arg(long, value_enum, default_value_t = MeasureArg::Salton)]
    pub measure: MeasureArg,
    /// Treat the input as a citation edge list
    #[arg(long)]
    pub from_edges: bool,
    /// Also write the aggregated cluster network as DOT
    #[arg(long)]
    pub export_dot: Option<PathBuf>,
    /// Also write the aggregated cluster network as GraphML
    #[arg(long)]
    pub export_graphml: Option<PathBuf>,
}

#[derive(Args)]
pub struct ExportArgs {
    /// Citation edge list (TSV) or a previously exported .graphml file
    pub input: PathBuf,
    #[arg(long, value_enum)]
    pub format: ExportFormatArg,
}

#[derive(ValueEnum, Clone, Copy)]
pub enum IndexKind {
    Jaccard,
    Salton,
}

#[derive(ValueEnum, Clone, Copy)]
pub enum RankMethod {
    Influence,
    Geller,
    Pagerank,
}

#[derive(ValueEnum, Clone, Copy)]
pub enum CoauthorMetric {
    Components,
    Diameter,
    Avgpath,
    Degree,
    Betweenness,
}

#[derive(ValueEnum, Clone, Copy)]
pub enum LinkageArg {
    Single,
    Average,
}

#[derive(ValueEnum, Clone, Copy)]
pub enum MeasureArg {
    Counts,
    Jaccard,
    Salton,
}

#[derive(ValueEnum, Clone, Copy)]
pub enum CowordModeArg {
    Binary,
    Counts,
}

#[derive(ValueEnum, Clone, Copy)]
pub enum ExportFormatArg {
    Dot,
    Graphml,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    match commands::run(&cli) {
        Ok(output) => {
            let timing = cli.timing.then(|| started.elapsed().as_secs_f64() * 1000.0);
            let document = match output {
                Output::Report { command, inputs, parameters, result } => {
                    report::render_report(command, &inputs, parameters, result, timing)
                }
                Output::Document(doc) => doc,
            };
            if let Some(out) = &cli.out {
                let path = resolve_out_path(out);
                if let Err(e) = std::fs::write(&path, document) {
                    eprintln!("bibnet: cannot write {}: {e}", path.display());
                    return ExitCode::from(1);
                }
                if !cli.quiet {
                    eprintln!("bibnet: wrote {}", path.display());
                }
            } else {
                print!("{document}");
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(message)) => {
            eprintln!("bibnet: {message}");
            ExitCode::from(2)
        }
        Err(Failure::Run(error)) => {
            eprintln!("bibnet: {error}");
            ExitCode::from(1)
        }
    }
}
