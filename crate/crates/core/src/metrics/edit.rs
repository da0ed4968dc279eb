use serde::{Deserialize, Serialize};

use super::normalize::normalized_words;
use crate::error::{Error, Result};

/// Edit operations of a minimum-cost alignment of hypothesis against reference.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EditCounts {
    pub hits: usize,
    pub substitutions: usize,
    pub deletions: usize,
    pub insertions: usize,
}

impl EditCounts {
    pub fn errors(&self) -> usize {
        self.substitutions + self.deletions + self.insertions
    }

    fn key(&self) -> (usize, usize) {
        (self.errors(), self.deletions + self.insertions)
    }
}

/// Levenshtein alignment with unit costs.
///
/// Among alignments with the fewest edits, the one with the most substitutions
/// is reported. Since `deletions - insertions` is fixed by the lengths, this
/// pins down all three counts.
pub fn edit_counts<T: PartialEq>(reference: &[T], hypothesis: &[T]) -> EditCounts {
    let n = hypothesis.len();
    let mut prev: Vec<EditCounts> = (0..=n)
        .map(|j| EditCounts { insertions: j, ..Default::default() })
        .collect();
    let mut cur = prev.clone();
    for (i, r) in reference.iter().enumerate() {
        cur[0] = EditCounts { deletions: i + 1, ..Default::default() };
        for (j, h) in hypothesis.iter().enumerate() {
            let mut diag = prev[j];
            if r == h {
                diag.hits += 1;
            } else {
                diag.substitutions += 1;
            }
            let mut del = prev[j + 1];
            del.deletions += 1;
            let mut ins = cur[j];
            ins.insertions += 1;
            cur[j + 1] = [diag, del, ins]
                .into_iter()
                .min_by_key(EditCounts::key)
                .expect("three candidates");
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[n]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorRates {
    pub wer: f64,
    pub ier: f64,
    pub cer: f64,
    pub words: EditCounts,
    pub ref_words: usize,
    pub chars: EditCounts,
    pub ref_chars: usize,
}

/// Word, insertion and character error rates. Inputs are normalized and split
/// into words first; CER runs over the space-joined word sequences.
pub fn wer_ier_cer<S: AsRef<str>>(pred_texts: &[S], ref_texts: &[S]) -> Result<ErrorRates> {
    let pred = normalized_words(pred_texts);
    let reference = normalized_words(ref_texts);
    if reference.is_empty() {
        return Err(Error::UndefinedMetric("WER"));
    }
    let words = edit_counts(&reference, &pred);
    let ref_chars: Vec<char> = reference.join(" ").chars().collect();
    let pred_chars: Vec<char> = pred.join(" ").chars().collect();
    let chars = edit_counts(&ref_chars, &pred_chars);
    let n = reference.len() as f64;
    Ok(ErrorRates {
        wer: words.errors() as f64 / n,
        ier: words.insertions as f64 / n,
        cer: chars.errors() as f64 / ref_chars.len() as f64,
        words,
        ref_words: reference.len(),
        chars,
        ref_chars: ref_chars.len(),
    })
}
