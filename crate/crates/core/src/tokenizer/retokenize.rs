//! Space-stripping vocabulary transform.
//!
//! Every vocabulary entry loses its leading spaces, entries that collide keep the
//! smallest id, and the merge list is filtered down to merges that still make
//! sense in the reduced vocabulary. Afterwards the standalone space token is the
//! only way to spell a space, so each space in the input becomes its own token.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use super::spec::TokenizerSpec;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RetokenizeSummary {
    pub original_vocab_size: usize,
    pub retokenized_vocab_size: usize,
    pub collapsed_duplicates: usize,
    pub original_merges: usize,
    pub retokenized_merges: usize,
    pub dropped_merges: usize,
}

pub fn retokenize(spec: &TokenizerSpec) -> Result<TokenizerSpec> {
    retokenize_with_summary(spec).map(|(spec, _)| spec)
}

pub fn retokenize_with_summary(spec: &TokenizerSpec) -> Result<(TokenizerSpec, RetokenizeSummary)> {
    let space = spec.space_symbol();
    let space_token = space.to_string();

    let mut vocab: HashMap<String, u32> = HashMap::with_capacity(spec.len());
    for (token, id) in spec.entries_by_id() {
        let stripped = token.trim_start_matches(space);
        if stripped.contains(space) {
            return Err(Error::UnsupportedLayout {
                token: token.to_string(),
            });
        }
        // Pure runs of spaces fold into the single space token.
        let key = if stripped.is_empty() {
            space_token.as_str()
        } else {
            stripped
        };
        // Ids arrive in ascending order, so the first claim is the smallest id.
        vocab.entry(key.to_string()).or_insert(id);
    }

    let mut seen = HashSet::new();
    let mut merges = Vec::new();
    for (left, right) in spec.merges() {
        let left = left.trim_start_matches(space);
        let right = right.trim_start_matches(space);
        if left.is_empty() || right.is_empty() {
            continue;
        }
        if !vocab.contains_key(left) || !vocab.contains_key(right) {
            continue;
        }
        if !vocab.contains_key(&format!("{left}{right}")) {
            continue;
        }
        if seen.insert((left, right)) {
            merges.push((left.to_string(), right.to_string()));
        }
    }

    let summary = RetokenizeSummary {
        original_vocab_size: spec.len(),
        retokenized_vocab_size: vocab.len(),
        collapsed_duplicates: spec.len() - vocab.len(),
        original_merges: spec.merges().len(),
        retokenized_merges: merges.len(),
        dropped_merges: spec.merges().len() - merges.len(),
    };
    let out = TokenizerSpec::new(vocab, merges, spec.byte_level())?;
    Ok((out, summary))
}

/// True when the only vocabulary entry containing a space is the space token.
pub fn is_retokenized(spec: &TokenizerSpec) -> bool {
    let space = spec.space_symbol();
    spec.vocab()
        .keys()
        .all(|t| !t.contains(space) || t.chars().eq(std::iter::once(space)))
}

/// Fraction of space characters in `corpus` that come out as the standalone
/// space token. Each space character counts once, including inside runs.
pub fn space_coverage<S: AsRef<str>>(corpus: &[S], spec: &TokenizerSpec) -> Result<f64> {
    let total: usize = corpus
        .iter()
        .map(|s| s.as_ref().chars().filter(|&c| c == ' ').count())
        .sum();
    if total == 0 {
        return Err(Error::UndefinedRatio);
    }
    let space_id = spec.id(&spec.space_symbol().to_string());
    let mut standalone = 0usize;
    for sentence in corpus {
        let ids = spec.encode_ids(sentence.as_ref())?;
        standalone += ids.iter().filter(|&&id| Some(id) == space_id).count();
    }
    Ok(standalone as f64 / total as f64)
}
