//! From token spans to words and pauses.

mod filter;
mod group;
mod pause;

pub use filter::filter_short_tokens;
pub use group::group_words;
pub use pause::{apply_pause_heuristic, apply_pause_heuristic_within};

use serde::{Deserialize, Serialize};

/// Default cap on how much of an inter-word gap is handed to the neighbouring words.
pub const DEFAULT_PAUSE_CAP_S: f64 = 0.16;
/// Tokens shorter than this are dropped by the hallucination filter.
pub const DEFAULT_MIN_TOKEN_DURATION_S: f64 = 0.05;
/// Tolerance for comparing times that come out of float arithmetic.
pub const TIME_EPS_S: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WordTiming {
    pub text: String,
    pub onset_s: f64,
    pub offset_s: f64,
    pub source_token_indices: Vec<usize>,
}

impl WordTiming {
    pub fn duration_s(&self) -> f64 {
        self.offset_s - self.onset_s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PauseEvent {
    pub onset_s: f64,
    pub offset_s: f64,
}

impl PauseEvent {
    pub fn duration_s(&self) -> f64 {
        self.offset_s - self.onset_s
    }
}
