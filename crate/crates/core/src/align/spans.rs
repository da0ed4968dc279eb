use serde::{Deserialize, Serialize};

use super::cost::CostMatrix;
use super::dtw::AlignPath;

/// Time interval assigned to one token of the original bundle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TokenSpan {
    pub token_index: usize,
    pub onset_s: f64,
    pub offset_s: f64,
}

impl TokenSpan {
    pub fn duration_s(&self) -> f64 {
        self.offset_s - self.onset_s
    }
}

/// Converts a path into per-token intervals.
///
/// A row owns `[first frame, last frame + 1)`. When a token-advance step makes
/// several rows visit the same frame, that frame is split into equal slices in
/// row order, so spans stay disjoint with positive length and tile the whole
/// `[0, frames * frame_duration_s)` window.
pub fn path_to_spans(path: &AlignPath, cost: &CostMatrix, frame_duration_s: f64) -> Vec<TokenSpan> {
    let rows = cost.rows();
    let frames = cost.frames();
    let mut first = vec![usize::MAX; rows];
    let mut last = vec![0usize; rows];
    // rows visiting each frame form a contiguous range [lo, hi]
    let mut frame_rows = vec![(usize::MAX, 0usize); frames];
    for &(i, j) in &path.steps {
        first[i] = first[i].min(j);
        last[i] = last[i].max(j);
        let fr = &mut frame_rows[j];
        fr.0 = fr.0.min(i);
        fr.1 = fr.1.max(i);
    }

    let boundary = |frame: usize, row: usize, after: bool| {
        let (lo, hi) = frame_rows[frame];
        let share = (hi - lo + 1) as f64;
        let pos = (row - lo + usize::from(after)) as f64;
        (frame as f64 + pos / share) * frame_duration_s
    };

    (0..rows)
        .filter(|&i| first[i] != usize::MAX)
        .map(|i| TokenSpan {
            token_index: cost.kept_index_map[i],
            onset_s: boundary(first[i], i, false),
            offset_s: boundary(last[i], i, true),
        })
        .collect()
}
