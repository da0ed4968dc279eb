use serde::{Deserialize, Serialize};

use super::normalize::normalize;
use crate::error::{Error, Result};
use crate::words::{WordTiming, TIME_EPS_S};

/// Anything with a text and a time interval.
pub trait TimedWord {
    fn text(&self) -> &str;
    fn onset_s(&self) -> f64;
    fn offset_s(&self) -> f64;
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferenceWord {
    #[serde(rename = "word")]
    pub text: String,
    #[serde(rename = "start")]
    pub onset_s: f64,
    #[serde(rename = "end")]
    pub offset_s: f64,
}

impl TimedWord for ReferenceWord {
    fn text(&self) -> &str {
        &self.text
    }
    fn onset_s(&self) -> f64 {
        self.onset_s
    }
    fn offset_s(&self) -> f64 {
        self.offset_s
    }
}

impl TimedWord for WordTiming {
    fn text(&self) -> &str {
        &self.text
    }
    fn onset_s(&self) -> f64 {
        self.onset_s
    }
    fn offset_s(&self) -> f64 {
        self.offset_s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CollarScore {
    pub collar_s: f64,
    pub tp: usize,
    pub fp: usize,
    #[serde(rename = "fn")]
    pub fn_: usize,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

impl CollarScore {
    pub fn from_counts(collar_s: f64, tp: usize, n_pred: usize, n_ref: usize) -> Self {
        let (precision, recall) = match (n_pred, n_ref) {
            (0, 0) => (1.0, 1.0),
            _ => (
                if n_pred == 0 { 0.0 } else { tp as f64 / n_pred as f64 },
                if n_ref == 0 { 0.0 } else { tp as f64 / n_ref as f64 },
            ),
        };
        let f1 = if precision + recall > 0.0 {
            2.0 * precision * recall / (precision + recall)
        } else {
            0.0
        };
        CollarScore {
            collar_s,
            tp,
            fp: n_pred - tp,
            fn_: n_ref - tp,
            precision,
            recall,
            f1,
        }
    }
}

/// Indices of `items` sorted by onset, ties by position.
fn onset_order<W: TimedWord>(items: &[W]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..items.len()).collect();
    order.sort_by(|&a, &b| items[a].onset_s().total_cmp(&items[b].onset_s()).then(a.cmp(&b)));
    order
}

pub fn within_collar<P: TimedWord, R: TimedWord>(p: &P, r: &R, collar_s: f64) -> bool {
    (p.onset_s() - r.onset_s()).abs() <= collar_s + TIME_EPS_S
        && (p.offset_s() - r.offset_s()).abs() <= collar_s + TIME_EPS_S
}

/// Collar-based detection score.
///
/// A prediction is a true positive when its normalized text equals that of a
/// still-unused reference and both its onset and offset lie within `collar_s`
/// of the reference's. Predictions are visited in onset order; among several
/// eligible references the one with the smallest total boundary deviation wins.
pub fn collar_f1<P: TimedWord, R: TimedWord>(pred: &[P], reference: &[R], collar_s: f64) -> CollarScore {
    let ref_norm: Vec<String> = reference.iter().map(|r| normalize(r.text())).collect();
    let mut used = vec![false; reference.len()];
    let mut tp = 0;
    for pi in onset_order(pred) {
        let p = &pred[pi];
        let text = normalize(p.text());
        let best = (0..reference.len())
            .filter(|&ri| !used[ri] && ref_norm[ri] == text && within_collar(p, &reference[ri], collar_s))
            .map(|ri| {
                let r = &reference[ri];
                let dev = (p.onset_s() - r.onset_s()).abs() + (p.offset_s() - r.offset_s()).abs();
                (dev, ri)
            })
            .min_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        if let Some((_, ri)) = best {
            used[ri] = true;
            tp += 1;
        }
    }
    CollarScore::from_counts(collar_s, tp, pred.len(), reference.len())
}

pub fn interval_iou(a: (f64, f64), b: (f64, f64)) -> f64 {
    let inter = (a.1.min(b.1) - a.0.max(b.0)).max(0.0);
    let union = (a.1 - a.0) + (b.1 - b.0) - inter;
    if union <= 0.0 {
        0.0
    } else {
        inter / union
    }
}

/// Mean IoU over reference words.
///
/// References are visited in onset order; each takes the unused content-matching
/// prediction with the highest IoU (ties to the earlier prediction). References
/// without an overlapping match score 0.
pub fn mean_iou<P: TimedWord, R: TimedWord>(pred: &[P], reference: &[R]) -> Result<f64> {
    if reference.is_empty() {
        return Err(Error::UndefinedMetric("mIoU"));
    }
    let pred_norm: Vec<String> = pred.iter().map(|p| normalize(p.text())).collect();
    let mut used = vec![false; pred.len()];
    let mut total = 0.0;
    for ri in onset_order(reference) {
        let r = &reference[ri];
        let text = normalize(r.text());
        let mut best: Option<(f64, usize)> = None;
        for pi in 0..pred.len() {
            if used[pi] || pred_norm[pi] != text {
                continue;
            }
            let p = &pred[pi];
            let iou = interval_iou((p.onset_s(), p.offset_s()), (r.onset_s(), r.offset_s()));
            if iou > 0.0 && best.is_none_or(|(b, _)| iou > b) {
                best = Some((iou, pi));
            }
        }
        if let Some((iou, pi)) = best {
            used[pi] = true;
            total += iou;
        }
    }
    Ok(total / reference.len() as f64)
}
