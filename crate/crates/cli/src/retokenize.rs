use crisp_core::tokenizer::{retokenize_with_summary, TokenizerSpec};

use crate::failure::{create_dir, write_file, Outcome};
use crate::RetokenizeArgs;

pub fn run(args: RetokenizeArgs) -> Outcome {
    let spec = match (&args.vocab, &args.merges) {
        (Some(v), Some(m)) => TokenizerSpec::load(v, m)?,
        _ => TokenizerSpec::whisper_multilingual(),
    };
    let (out, summary) = retokenize_with_summary(&spec)?;
    log::info!(
        "vocabulary {} -> {}, merges {} -> {}",
        summary.original_vocab_size,
        summary.retokenized_vocab_size,
        summary.original_merges,
        summary.retokenized_merges
    );
    create_dir(&args.out)?;
    write_file(&args.out.join("vocab.json"), out.vocab_json().as_bytes())?;
    write_file(&args.out.join("merges.txt"), out.merges_txt().as_bytes())?;
    let mut json = serde_json::to_string_pretty(&summary).expect("serializable");
    json.push('\n');
    write_file(&args.out.join("summary.json"), json.as_bytes())
}
