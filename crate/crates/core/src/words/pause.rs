use super::{PauseEvent, WordTiming, TIME_EPS_S};
use crate::error::{Error, Result};

/// Splits inter-word gaps between the neighbouring words.
///
/// A gap `g <= cap_s` is absorbed completely, half on each side. A longer gap
/// gives `cap_s / 2` to each neighbour and the remaining `g - cap_s` becomes a
/// [`PauseEvent`].
pub fn apply_pause_heuristic(
    words: &[WordTiming],
    cap_s: f64,
) -> Result<(Vec<WordTiming>, Vec<PauseEvent>)> {
    apply_pause_heuristic_within(words, cap_s, None)
}

/// Like [`apply_pause_heuristic`], and additionally reports silence between
/// the window edges and the first/last word as pauses when it lasts at least
/// `cap_s`. Boundary silence is never absorbed into words.
pub fn apply_pause_heuristic_within(
    words: &[WordTiming],
    cap_s: f64,
    window: Option<(f64, f64)>,
) -> Result<(Vec<WordTiming>, Vec<PauseEvent>)> {
    if !(cap_s.is_finite() && cap_s > 0.0) {
        return Err(Error::InvalidInput(format!("pause cap must be positive, got {cap_s}")));
    }
    for (i, w) in words.iter().enumerate() {
        if w.onset_s.partial_cmp(&w.offset_s) != Some(std::cmp::Ordering::Less) {
            return Err(Error::InvalidInput(format!(
                "word {i} ({:?}) has onset {} >= offset {}",
                w.text, w.onset_s, w.offset_s
            )));
        }
    }

    let mut out = words.to_vec();
    let mut pauses = Vec::new();

    if let (Some((start, _)), Some(first)) = (window, words.first()) {
        if first.onset_s - start >= cap_s - TIME_EPS_S {
            pauses.push(PauseEvent { onset_s: start, offset_s: first.onset_s });
        }
    }

    for k in 1..words.len() {
        let (prev_off, next_on) = (words[k - 1].offset_s, words[k].onset_s);
        let gap = next_on - prev_off;
        if gap < -TIME_EPS_S {
            return Err(Error::InvalidInput(format!(
                "words {} and {k} overlap by {:.6} s",
                k - 1,
                -gap
            )));
        }
        if gap <= 0.0 {
            continue;
        }
        let half = if gap <= cap_s + TIME_EPS_S { gap / 2.0 } else { cap_s / 2.0 };
        out[k - 1].offset_s = prev_off + half;
        out[k].onset_s = next_on - half;
        if gap > cap_s + TIME_EPS_S {
            pauses.push(PauseEvent {
                onset_s: prev_off + half,
                offset_s: next_on - half,
            });
        }
    }

    if let (Some((_, end)), Some(last)) = (window, words.last()) {
        if end - last.offset_s >= cap_s - TIME_EPS_S {
            pauses.push(PauseEvent { onset_s: last.offset_s, offset_s: end });
        }
    }

    Ok((out, pauses))
}
