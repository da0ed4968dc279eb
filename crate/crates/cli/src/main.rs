mod align;
mod batch;
mod eval;
mod failure;
mod retokenize;
mod synth;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use crisp_core::metrics::Metric;

#[derive(Parser)]
#[command(name = "crisp", version, about = "Word timestamps from decoder cross-attention")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rewrite a BPE vocabulary so that spaces are standalone tokens.
    Retokenize(RetokenizeArgs),
    /// Align a manifest (or every manifest under a directory) to word timings.
    Align(AlignArgs),
    /// Score hypothesis word timings against a reference.
    Eval(EvalArgs),
    /// Generate a synthetic attention bundle from planted word timings.
    Synth(SynthArgs),
}

#[derive(Args)]
struct RetokenizeArgs {
    /// vocab.json of the source tokenizer; the bundled multilingual one if omitted.
    #[arg(long, requires = "merges")]
    vocab: Option<PathBuf>,
    #[arg(long, requires = "vocab")]
    merges: Option<PathBuf>,
    /// Directory for vocab.json, merges.txt and summary.json.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct AlignArgs {
    /// Manifest file, or a directory searched for manifest.json / *.manifest.json.
    input: PathBuf,
    /// Output file (single manifest) or directory (batch). Stdout if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_name = "SECONDS")]
    pause_cap: Option<f64>,
    #[arg(long, value_name = "SECONDS")]
    min_token_duration: Option<f64>,
    /// Keep tokens shorter than the minimum duration.
    #[arg(long, conflicts_with = "hallucination_filter")]
    no_filter: bool,
    /// Drop tokens shorter than the minimum duration (overrides the manifest).
    #[arg(long)]
    hallucination_filter: bool,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum MetricArg {
    F1,
    Miou,
    Wer,
}

impl From<MetricArg> for Metric {
    fn from(m: MetricArg) -> Self {
        match m {
            MetricArg::F1 => Metric::F1,
            MetricArg::Miou => Metric::Miou,
            MetricArg::Wer => Metric::Wer,
        }
    }
}

#[derive(Args)]
struct EvalArgs {
    /// Hypothesis timings (file or directory).
    #[arg(long)]
    hyp: PathBuf,
    /// Reference timings (file or directory with matching file names).
    #[arg(long = "ref")]
    reference: PathBuf,
    /// Collar in seconds; repeat for a sweep. Defaults to 0.2.
    #[arg(long = "collar", value_name = "SECONDS")]
    collars: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_values = ["f1", "miou", "wer"])]
    metrics: Vec<MetricArg>,
    /// Report file (single pair) or directory (batch). Stdout if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the collar sweep as CSV (single pair only).
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Args)]
struct SynthArgs {
    /// Fixture spec JSON.
    spec: PathBuf,
    /// Directory for attn.cwat, manifest.json and reference.json.
    #[arg(long)]
    out: PathBuf,
    #[arg(long, requires = "merges")]
    vocab: Option<PathBuf>,
    #[arg(long, requires = "vocab")]
    merges: Option<PathBuf>,
    /// Tokenize with the vocabulary as given instead of its retokenized form.
    #[arg(long)]
    original_tokenizer: bool,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("CRISP_LOG", "warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Retokenize(a) => retokenize::run(a),
        Command::Align(a) => align::run(a),
        Command::Eval(a) => eval::run(a),
        Command::Synth(a) => synth::run(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.exit_code())
        }
    }
}
