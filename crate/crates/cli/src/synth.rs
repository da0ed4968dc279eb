use crisp_core::io::{read_to_string, reference_to_json, AlignmentManifest};
use crisp_core::synth::{generate, FixtureSpec};
use crisp_core::tokenizer::{retokenize, TokenizerSpec};

use crate::failure::{create_dir, user, write_file, Outcome};
use crate::SynthArgs;

const ATTENTION_FILE: &str = "attn.cwat";

pub fn run(args: SynthArgs) -> Outcome {
    let text = read_to_string(&args.spec)?;
    let spec: FixtureSpec = serde_json::from_str(&text)
        .map_err(|e| user(format!("{}: line {}: {e}", args.spec.display(), e.line())))?;

    let base = match (&args.vocab, &args.merges) {
        (Some(v), Some(m)) => TokenizerSpec::load(v, m)?,
        _ => TokenizerSpec::whisper_multilingual(),
    };
    let tokenizer = if args.original_tokenizer { base } else { retokenize(&base)? };

    let fixture = generate(&spec, &tokenizer)?;
    let manifest = AlignmentManifest::new(
        ATTENTION_FILE,
        &fixture.bundle.tokens,
        fixture.bundle.frame_duration_s,
    );
    create_dir(&args.out)?;
    write_file(&args.out.join(ATTENTION_FILE), &fixture.bundle.attention.to_bytes())?;
    write_file(&args.out.join("manifest.json"), manifest.to_json().as_bytes())?;
    write_file(&args.out.join("reference.json"), reference_to_json(&fixture.reference).as_bytes())
}
