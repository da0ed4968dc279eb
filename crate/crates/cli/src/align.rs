use std::path::{Path, PathBuf};

use crisp_core::io::{AlignmentManifest, WordTimingsFile};
use crisp_core::pipeline::{align, AlignOptions};

use crate::batch::{find_files, run_all};
use crate::failure::{emit, user, Outcome};
use crate::AlignArgs;

const MANIFEST: &str = "manifest.json";
const MANIFEST_SUFFIX: &str = ".manifest.json";

fn is_manifest(path: &Path) -> bool {
    path.file_name()
        .and_then(|n| n.to_str())
        .is_some_and(|n| n == MANIFEST || n.ends_with(MANIFEST_SUFFIX))
}

/// `a/manifest.json` becomes `a/words.json`, `b.manifest.json` becomes `b.words.json`.
fn output_name(relative: &Path) -> PathBuf {
    let name = relative.file_name().and_then(|n| n.to_str()).unwrap_or_default();
    let renamed = match name.strip_suffix(MANIFEST_SUFFIX) {
        Some(stem) => format!("{stem}.words.json"),
        None => "words.json".to_string(),
    };
    relative.with_file_name(renamed)
}

fn options(args: &AlignArgs, manifest: &AlignmentManifest) -> AlignOptions {
    let mut o = manifest.options;
    if let Some(cap) = args.pause_cap {
        o.pause_cap_s = cap;
    }
    if let Some(min) = args.min_token_duration {
        o.min_token_duration_s = min;
    }
    if args.no_filter {
        o.hallucination_filter = false;
    }
    if args.hallucination_filter {
        o.hallucination_filter = true;
    }
    o
}

fn align_one(args: &AlignArgs, manifest_path: &Path, out: Option<&Path>) -> Outcome {
    let (manifest, base) = AlignmentManifest::load(manifest_path)?;
    let opts = options(args, &manifest);
    opts.validate()?;
    let bundle = manifest.bundle(&base)?;
    let alignment = align(&bundle, &opts)
        .map_err(|e| user(format!("{}: {e}", manifest_path.display())))?;
    log::info!(
        "{}: {} words, {} pauses",
        manifest_path.display(),
        alignment.words.len(),
        alignment.pauses.len()
    );
    emit(out, &WordTimingsFile::from(&alignment).to_json())
}

pub fn run(args: AlignArgs) -> Outcome {
    if !args.input.is_dir() {
        return align_one(&args, &args.input, args.out.as_deref());
    }
    let out_dir = args
        .out
        .clone()
        .ok_or_else(|| user("aligning a directory needs --out DIR"))?;
    let manifests = find_files(&args.input, &is_manifest)?;
    if manifests.is_empty() {
        return Err(user(format!("no manifests found under {}", args.input.display())));
    }
    run_all(&manifests, args.jobs, |m| {
        let relative = m.strip_prefix(&args.input).unwrap_or(m);
        align_one(&args, m, Some(&out_dir.join(output_name(relative))))
    })
}
