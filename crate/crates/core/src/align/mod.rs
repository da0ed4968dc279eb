//! Cross-attention to token timing: cost matrix, DTW and frame spans.

pub mod bundle;
pub mod cost;
pub mod dtw;
pub mod spans;

pub use bundle::{AttentionBundle, AttentionTensor, DEFAULT_FRAME_DURATION_S};
pub use cost::{build_cost_matrix, CostMatrix};
pub use dtw::{dtw, AlignPath};
pub use spans::{path_to_spans, TokenSpan};

use crate::error::Result;

/// Cost matrix, DTW path and token spans for a bundle in one call.
pub fn align_tokens(bundle: &AttentionBundle) -> Result<Vec<TokenSpan>> {
    let cost = build_cost_matrix(bundle)?;
    let path = dtw(&cost)?;
    Ok(path_to_spans(&path, &cost, bundle.frame_duration_s))
}
