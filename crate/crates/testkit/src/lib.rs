//! Test support: exhaustive reference implementations and instance generators.
//!
//! Everything here is deliberately slow and direct. None of it calls into the
//! algorithms it is used to check.

use crisp_core::metrics::ReferenceWord;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

static SENTENCES: &str = include_str!("../data/sentences.txt");

/// The bundled 1000-sentence English corpus.
pub fn corpus() -> Vec<&'static str> {
    SENTENCES.lines().filter(|l| !l.is_empty()).collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Minimum path cost over every monotonic, continuous path from the top-left to
/// the bottom-right cell, by explicit enumeration.
pub fn dtw_brute_force(cost: &[Vec<f64>]) -> f64 {
    fn walk(cost: &[Vec<f64>], i: usize, j: usize, acc: f64, best: &mut f64) {
        let acc = acc + cost[i][j];
        let (m, n) = (cost.len(), cost[0].len());
        if i == m - 1 && j == n - 1 {
            if acc < *best {
                *best = acc;
            }
            return;
        }
        if i + 1 < m {
            walk(cost, i + 1, j, acc, best);
        }
        if j + 1 < n {
            walk(cost, i, j + 1, acc, best);
        }
        if i + 1 < m && j + 1 < n {
            walk(cost, i + 1, j + 1, acc, best);
        }
    }
    let mut best = f64::INFINITY;
    walk(cost, 0, 0, 0.0, &mut best);
    best
}

pub fn random_matrix(rng: &mut ChaCha8Rng, m: usize, n: usize) -> Vec<Vec<f64>> {
    (0..m)
        .map(|_| (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect())
        .collect()
}

fn same_text(a: &str, b: &str) -> bool {
    a.to_lowercase() == b.to_lowercase()
}

fn collar_ok(p: &ReferenceWord, r: &ReferenceWord, collar: f64) -> bool {
    same_text(&p.text, &r.text)
        && (p.onset_s - r.onset_s).abs() <= collar + 1e-9
        && (p.offset_s - r.offset_s).abs() <= collar + 1e-9
}

/// Largest number of prediction/reference pairs that can be matched one to one.
pub fn collar_tp_optimal(pred: &[ReferenceWord], reference: &[ReferenceWord], collar: f64) -> usize {
    fn go(k: usize, pred: &[ReferenceWord], reference: &[ReferenceWord], collar: f64, used: &mut Vec<bool>) -> usize {
        if k == pred.len() {
            return 0;
        }
        let mut best = go(k + 1, pred, reference, collar, used);
        for r in 0..reference.len() {
            if !used[r] && collar_ok(&pred[k], &reference[r], collar) {
                used[r] = true;
                best = best.max(1 + go(k + 1, pred, reference, collar, used));
                used[r] = false;
            }
        }
        best
    }
    go(0, pred, reference, collar, &mut vec![false; reference.len()])
}

fn iou(a: &ReferenceWord, b: &ReferenceWord) -> f64 {
    let inter = (a.offset_s.min(b.offset_s) - a.onset_s.max(b.onset_s)).max(0.0);
    let union = (a.offset_s - a.onset_s) + (b.offset_s - b.onset_s) - inter;
    if union > 0.0 {
        inter / union
    } else {
        0.0
    }
}

/// Best achievable mean IoU when each prediction serves at most one reference.
pub fn miou_optimal(pred: &[ReferenceWord], reference: &[ReferenceWord]) -> f64 {
    fn go(k: usize, pred: &[ReferenceWord], reference: &[ReferenceWord], used: &mut Vec<bool>) -> f64 {
        if k == reference.len() {
            return 0.0;
        }
        let mut best = go(k + 1, pred, reference, used);
        for p in 0..pred.len() {
            if !used[p] && same_text(&pred[p].text, &reference[k].text) {
                used[p] = true;
                best = best.max(iou(&pred[p], &reference[k]) + go(k + 1, pred, reference, used));
                used[p] = false;
            }
        }
        best
    }
    go(0, pred, reference, &mut vec![false; pred.len()]) / reference.len() as f64
}

/// `(substitutions, deletions, insertions)` of the edit script with the fewest
/// edits, ties broken by the fewest insertions plus deletions. Enumerates every
/// script.
pub fn edit_brute_force<T: PartialEq>(reference: &[T], hypothesis: &[T]) -> (usize, usize, usize) {
    fn go<T: PartialEq>(r: &[T], h: &[T], s: usize, d: usize, i: usize, best: &mut Option<(usize, usize, usize)>) {
        if r.is_empty() && h.is_empty() {
            let key = |(s, d, i): (usize, usize, usize)| (s + d + i, d + i);
            if best.is_none_or(|b| key((s, d, i)) < key(b)) {
                *best = Some((s, d, i));
            }
            return;
        }
        if !r.is_empty() && !h.is_empty() {
            let sub = usize::from(r[0] != h[0]);
            go(&r[1..], &h[1..], s + sub, d, i, best);
        }
        if !r.is_empty() {
            go(&r[1..], h, s, d + 1, i, best);
        }
        if !h.is_empty() {
            go(r, &h[1..], s, d, i + 1, best);
        }
    }
    let mut best = None;
    go(reference, hypothesis, 0, 0, 0, &mut best);
    best.expect("at least one script")
}

/// True when some prediction could be matched to two or more references
/// within `collar`. Onset-order greedy matching is only guaranteed optimal
/// when this is false.
pub fn collar_contested(pred: &[ReferenceWord], reference: &[ReferenceWord], collar: f64) -> bool {
    pred.iter()
        .any(|p| reference.iter().filter(|r| collar_ok(p, r, collar)).count() > 1)
}

/// True when some prediction overlaps two or more same-text references.
pub fn overlap_contested(pred: &[ReferenceWord], reference: &[ReferenceWord]) -> bool {
    pred.iter().any(|p| {
        reference
            .iter()
            .filter(|r| same_text(&p.text, &r.text) && iou(p, r) > 0.0)
            .count()
            > 1
    })
}

/// Reference/prediction pairs of at most six words each, one per seed.
pub fn metric_instance(seed: u64, jitter: f64) -> (Vec<ReferenceWord>, Vec<ReferenceWord>) {
    let mut r = rng(seed);
    let reference = random_reference(&mut r, 6);
    let pred = perturb(&mut r, &reference, jitter, 6);
    (reference, pred)
}

const TEXTS: [&str; 4] = ["a", "b", "c", "uh"];

/// Ordered, non-overlapping reference words with texts from a small alphabet,
/// so repeated words are common.
pub fn random_reference(rng: &mut ChaCha8Rng, max_words: usize) -> Vec<ReferenceWord> {
    let n = rng.gen_range(1..=max_words);
    let mut t = rng.gen_range(0.0..0.3);
    (0..n)
        .map(|_| {
            let d = rng.gen_range(0.2..0.6);
            let w = ReferenceWord {
                text: TEXTS[rng.gen_range(0..TEXTS.len())].to_string(),
                onset_s: t,
                offset_s: t + d,
            };
            t += d + rng.gen_range(0.0..0.3);
            w
        })
        .collect()
}

/// A noisy copy of `reference`: boundary jitter of up to `jitter` seconds, some
/// words dropped or relabelled, and occasional inserted words.
pub fn perturb(rng: &mut ChaCha8Rng, reference: &[ReferenceWord], jitter: f64, max_words: usize) -> Vec<ReferenceWord> {
    let mut out = Vec::new();
    for r in reference {
        let roll: f64 = rng.gen();
        if roll < 0.1 {
            continue;
        }
        let mut on = r.onset_s + rng.gen_range(-jitter..=jitter);
        let mut off = r.offset_s + rng.gen_range(-jitter..=jitter);
        if off <= on + 0.01 {
            std::mem::swap(&mut on, &mut off);
            off = off.max(on + 0.01);
        }
        let text = if roll < 0.2 {
            TEXTS[rng.gen_range(0..TEXTS.len())].to_string()
        } else {
            r.text.clone()
        };
        out.push(ReferenceWord { text, onset_s: on, offset_s: off });
        if rng.gen_bool(0.1) && out.len() < max_words {
            let t = off + 0.01;
            out.push(ReferenceWord {
                text: TEXTS[rng.gen_range(0..TEXTS.len())].to_string(),
                onset_s: t,
                offset_s: t + rng.gen_range(0.1..0.4),
            });
        }
    }
    out.truncate(max_words);
    out.sort_by(|a, b| a.onset_s.total_cmp(&b.onset_s));
    out
}

pub fn random_words(rng: &mut ChaCha8Rng, max_len: usize, alphabet: &[&'static str]) -> Vec<&'static str> {
    let n = rng.gen_range(0..=max_len);
    (0..n).map(|_| alphabet[rng.gen_range(0..alphabet.len())]).collect()
}
