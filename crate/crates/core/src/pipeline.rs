//! The full alignment pipeline: attention bundle in, words and pauses out.

use serde::{Deserialize, Serialize};

use crate::align::{build_cost_matrix, dtw, path_to_spans, AttentionBundle};
use crate::error::{Error, Result};
use crate::words::{
    apply_pause_heuristic_within, filter_short_tokens, group_words, PauseEvent, WordTiming,
    DEFAULT_MIN_TOKEN_DURATION_S, DEFAULT_PAUSE_CAP_S,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct AlignOptions {
    pub pause_cap_s: f64,
    pub min_token_duration_s: f64,
    pub hallucination_filter: bool,
}

impl Default for AlignOptions {
    fn default() -> Self {
        AlignOptions {
            pause_cap_s: DEFAULT_PAUSE_CAP_S,
            min_token_duration_s: DEFAULT_MIN_TOKEN_DURATION_S,
            hallucination_filter: true,
        }
    }
}

impl AlignOptions {
    pub fn validate(&self) -> Result<()> {
        let positive = |v: f64| v.is_finite() && v > 0.0;
        if !positive(self.pause_cap_s) {
            return Err(Error::InvalidInput(format!(
                "pause cap must be positive, got {}",
                self.pause_cap_s
            )));
        }
        if !positive(self.min_token_duration_s) {
            return Err(Error::InvalidInput(format!(
                "minimum token duration must be positive, got {}",
                self.min_token_duration_s
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Alignment {
    pub words: Vec<WordTiming>,
    pub pauses: Vec<PauseEvent>,
}

/// Aligns a bundle and assembles words.
///
/// Cost matrix, DTW and spans first; then the optional short-token filter,
/// word grouping, and the pause heuristic over the bundle's time window.
pub fn align(bundle: &AttentionBundle, options: &AlignOptions) -> Result<Alignment> {
    options.validate()?;
    let cost = build_cost_matrix(bundle)?;
    let path = dtw(&cost)?;
    let spans = path_to_spans(&path, &cost, bundle.frame_duration_s);

    let (spans, tokens) = if options.hallucination_filter {
        filter_short_tokens(&spans, &bundle.tokens, options.min_token_duration_s)
    } else {
        (spans, bundle.tokens.clone())
    };
    let raw = group_words(&spans, &tokens);
    let (words, pauses) =
        apply_pause_heuristic_within(&raw, options.pause_cap_s, Some((0.0, bundle.duration_s())))?;
    Ok(Alignment { words, pauses })
}
