//! Transcript and timing evaluation: collar F1, mIoU, WER/IER/CER.

mod edit;
mod normalize;
mod timing;

pub use edit::{edit_counts, wer_ier_cer, EditCounts, ErrorRates};
pub use normalize::{normalize, normalized_words};
pub use timing::{collar_f1, interval_iou, mean_iou, within_collar, CollarScore, ReferenceWord, TimedWord};

use serde::{Deserialize, Serialize};

use crate::error::Result;

/// Collar used when none is requested.
pub const DEFAULT_COLLAR_S: f64 = 0.2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    F1,
    Miou,
    /// WER together with IER and CER.
    Wer,
}

impl Metric {
    pub const ALL: [Metric; 3] = [Metric::F1, Metric::Miou, Metric::Wer];
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub substitutions: usize,
    pub deletions: usize,
    pub insertions: usize,
    pub ref_words: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub collars: Vec<CollarScore>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub miou: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wer: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ier: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cer: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counts: Option<Counts>,
}

/// Runs the requested metrics. An empty collar list means [`DEFAULT_COLLAR_S`].
pub fn evaluate<P: TimedWord, R: TimedWord>(
    pred: &[P],
    reference: &[R],
    collars: &[f64],
    metrics: &[Metric],
) -> Result<EvalReport> {
    let wants = |m| metrics.contains(&m);
    let collars = if collars.is_empty() { &[DEFAULT_COLLAR_S][..] } else { collars };

    let mut report = EvalReport {
        collars: Vec::new(),
        miou: None,
        wer: None,
        ier: None,
        cer: None,
        counts: None,
    };
    if wants(Metric::F1) {
        report.collars = collars.iter().map(|&c| collar_f1(pred, reference, c)).collect();
    }
    if wants(Metric::Miou) {
        report.miou = Some(mean_iou(pred, reference)?);
    }
    if wants(Metric::Wer) {
        let pred_texts: Vec<&str> = pred.iter().map(TimedWord::text).collect();
        let ref_texts: Vec<&str> = reference.iter().map(TimedWord::text).collect();
        let rates = wer_ier_cer(&pred_texts, &ref_texts)?;
        report.wer = Some(rates.wer);
        report.ier = Some(rates.ier);
        report.cer = Some(rates.cer);
        report.counts = Some(Counts {
            substitutions: rates.words.substitutions,
            deletions: rates.words.deletions,
            insertions: rates.words.insertions,
            ref_words: rates.ref_words,
        });
    }
    Ok(report)
}

/// `collar,f1` rows for plotting a collar sweep.
pub fn collar_csv(report: &EvalReport) -> String {
    let mut out = String::from("collar,f1\n");
    for c in &report.collars {
        out.push_str(&format!("{},{}\n", c.collar_s, c.f1));
    }
    out
}
