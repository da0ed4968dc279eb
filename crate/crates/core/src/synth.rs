//! Synthetic attention bundles with planted word timings.
//!
//! Each aligned token gets a Gaussian bump over the frames where it was
//! planted, identical across heads, plus optional i.i.d. Gaussian noise
//! clipped at zero. Randomness comes from ChaCha8 seeded with `seed`, so a
//! spec always produces the same bytes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::align::{AttentionBundle, AttentionTensor, DEFAULT_FRAME_DURATION_S};
use crate::error::{Error, Result};
use crate::metrics::ReferenceWord;
use crate::tokenizer::{is_punctuation, Token, TokenizerSpec};

pub const DEFAULT_NOISE_SIGMA: f64 = 0.1;
pub const DEFAULT_HEADS: usize = 2;

fn default_frame_duration() -> f64 {
    DEFAULT_FRAME_DURATION_S
}
fn default_heads() -> usize {
    DEFAULT_HEADS
}
fn default_noise() -> f64 {
    DEFAULT_NOISE_SIGMA
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlantedWord {
    pub text: String,
    pub start: f64,
    pub end: f64,
}

/// Words with their planted timings; gaps between them are pauses.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixtureSpec {
    pub words: Vec<PlantedWord>,
    #[serde(default = "default_frame_duration")]
    pub frame_duration_s: f64,
    #[serde(default = "default_heads")]
    pub heads: usize,
    #[serde(default = "default_noise")]
    pub noise_sigma: f64,
    #[serde(default)]
    pub seed: u64,
    /// Total length; defaults to the end of the last word.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub duration_s: Option<f64>,
}

impl FixtureSpec {
    /// Default frame rate, head count, noise and seed; no trailing silence.
    pub fn new(words: Vec<PlantedWord>) -> Self {
        FixtureSpec {
            words,
            frame_duration_s: DEFAULT_FRAME_DURATION_S,
            heads: DEFAULT_HEADS,
            noise_sigma: DEFAULT_NOISE_SIGMA,
            seed: 0,
            duration_s: None,
        }
    }

    pub fn total_duration_s(&self) -> f64 {
        let last = self.words.last().map_or(0.0, |w| w.end);
        self.duration_s.unwrap_or(last)
    }

    pub fn validate(&self) -> Result<()> {
        let err = |m: String| Err(Error::FixtureSpec(m));
        let fd = self.frame_duration_s;
        if !(fd.is_finite() && fd > 0.0) {
            return err(format!("frame duration must be positive, got {fd}"));
        }
        if self.heads == 0 {
            return err("need at least one head".into());
        }
        if !(self.noise_sigma.is_finite() && self.noise_sigma >= 0.0) {
            return err(format!("noise_sigma must be >= 0, got {}", self.noise_sigma));
        }
        if self.words.is_empty() {
            return err("no words".into());
        }
        let mut prev_end = 0.0;
        for (i, w) in self.words.iter().enumerate() {
            if !(w.start.is_finite() && w.end.is_finite()) || w.start < prev_end - 1e-9 {
                return err(format!("word {i} ({:?}) overlaps its predecessor or starts before 0", w.text));
            }
            if w.end - w.start < fd - 1e-9 {
                return err(format!("word {i} ({:?}) is shorter than one frame", w.text));
            }
            if w.text.contains(char::is_whitespace) || !w.text.chars().any(|c| !is_punctuation(c)) {
                return err(format!("word {i} ({:?}) must be a single non-punctuation word", w.text));
            }
            prev_end = w.end;
        }
        if self.total_duration_s() < prev_end - 1e-9 {
            return err("duration_s ends before the last word".into());
        }
        Ok(())
    }

    /// Transcript the tokenizer sees. A space stands in for leading silence and
    /// for trailing silence of at least half a frame.
    pub fn transcript(&self) -> String {
        let mut text = String::new();
        if self.words[0].start > 0.0 {
            text.push(' ');
        }
        let joined: Vec<&str> = self.words.iter().map(|w| w.text.as_str()).collect();
        text.push_str(&joined.join(" "));
        if self.trailing_silence() {
            text.push(' ');
        }
        text
    }

    fn trailing_silence(&self) -> bool {
        let last = self.words.last().expect("validated").end;
        self.total_duration_s() - last >= self.frame_duration_s / 2.0
    }

    pub fn reference(&self) -> Vec<ReferenceWord> {
        self.words
            .iter()
            .map(|w| ReferenceWord {
                text: w.text.clone(),
                onset_s: w.start,
                offset_s: w.end,
            })
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct Fixture {
    pub bundle: AttentionBundle,
    pub reference: Vec<ReferenceWord>,
    /// Planted `(onset, offset)` per token; `None` for tokens with no time.
    pub planted: Vec<Option<(f64, f64)>>,
}

/// Time interval of every byte of the transcript.
fn byte_timeline(spec: &FixtureSpec) -> Vec<(f64, f64)> {
    let mut timeline = Vec::new();
    let mut push_char = |c: char, span: (f64, f64)| {
        timeline.extend(std::iter::repeat_n(span, c.len_utf8()));
    };
    let words = &spec.words;
    if words[0].start > 0.0 {
        push_char(' ', (0.0, words[0].start));
    }
    for (k, w) in words.iter().enumerate() {
        if k > 0 {
            push_char(' ', (words[k - 1].end, w.start));
        }
        // Punctuation inside a word takes no time.
        let weights: Vec<f64> = w.text.chars().map(|c| if is_punctuation(c) { 0.0 } else { 1.0 }).collect();
        let total: f64 = weights.iter().sum();
        let mut acc = 0.0;
        for (c, weight) in w.text.chars().zip(&weights) {
            let a = w.start + (w.end - w.start) * acc / total;
            acc += weight;
            let b = w.start + (w.end - w.start) * acc / total;
            push_char(c, (a, b));
        }
    }
    if spec.trailing_silence() {
        let last = words.last().expect("validated").end;
        push_char(' ', (last, spec.total_duration_s()));
    }
    timeline
}

pub fn generate(spec: &FixtureSpec, tokenizer: &TokenizerSpec) -> Result<Fixture> {
    spec.validate()?;
    let transcript = spec.transcript();
    let tokens: Vec<Token> = tokenizer.encode(&transcript)?;
    let timeline = byte_timeline(spec);

    let mut planted = Vec::with_capacity(tokens.len());
    let mut offset = 0usize;
    let mut raw = Vec::new();
    for token in &tokens {
        raw.clear();
        tokenizer.token_bytes(token.id, &mut raw);
        let bytes = &timeline[offset..offset + raw.len()];
        offset += raw.len();
        let span = bytes
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &(s, e)| (a.min(s), b.max(e)));
        planted.push(token.class.is_aligned().then_some(span));
    }
    debug_assert_eq!(offset, timeline.len());

    let fd = spec.frame_duration_s;
    let frames = ((spec.total_duration_s() / fd) - 1e-9).ceil().max(1.0) as usize;
    let heads = spec.heads;

    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let noise = (spec.noise_sigma > 0.0)
        .then(|| Normal::new(0.0, spec.noise_sigma).expect("validated sigma"));

    // Tokens without a planted interval sit at the end of the previous one.
    let mut cursor = 0.0;
    let mut data = Vec::with_capacity(tokens.len() * heads * frames);
    for span in &planted {
        let (a, b) = span.unwrap_or((cursor, cursor));
        cursor = b;
        let center = (a + b) / 2.0;
        let fwhm = ((b - a) / 2.0).max(fd);
        let sigma = fwhm / (2.0 * (2.0 * std::f64::consts::LN_2).sqrt());
        for _ in 0..heads {
            for j in 0..frames {
                let t = (j as f64 + 0.5) * fd;
                let mut v = (-0.5 * ((t - center) / sigma).powi(2)).exp();
                if let Some(n) = &noise {
                    v += n.sample(&mut rng);
                }
                data.push(v.max(0.0) as f32);
            }
        }
    }

    let tensor = AttentionTensor::new(tokens.len(), heads, frames, data)?;
    let bundle = AttentionBundle::new(tensor, tokens, fd)?;
    Ok(Fixture {
        bundle,
        reference: spec.reference(),
        planted,
    })
}

/// Knobs for [`random_layout`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LayoutParams {
    pub min_words: usize,
    pub max_words: usize,
    pub word_duration_s: (f64, f64),
    /// Number of mid-sentence pauses.
    pub pauses: usize,
    pub pause_duration_s: (f64, f64),
    pub edge_silence_s: (f64, f64),
}

impl Default for LayoutParams {
    fn default() -> Self {
        LayoutParams {
            min_words: 8,
            max_words: 14,
            word_duration_s: (0.3, 0.7),
            pauses: 1,
            pause_duration_s: (0.3, 0.8),
            edge_silence_s: (0.1, 0.4),
        }
    }
}

const LEXICON: &[&str] = &[
    "the", "and", "that", "have", "for", "not", "with", "you", "this", "but", "his", "from",
    "they", "say", "her", "she", "will", "one", "all", "would", "there", "their", "what",
    "about", "which", "when", "make", "can", "like", "time", "just", "know", "take", "people",
    "into", "year", "your", "good", "some", "could", "them", "see", "other", "than", "then",
    "now", "look", "only", "come", "over", "think", "also", "back", "after", "use", "two",
    "how", "our", "work", "first", "well", "way", "even", "new", "want", "because", "any",
    "these", "give", "day", "most", "long", "pause", "really", "maybe", "uh", "um", "so",
    "right", "okay", "yeah", "water", "morning", "walked", "garden", "quiet", "tomorrow",
];

/// A speech-like layout: words back to back, a few pauses, silence at both ends.
pub fn random_layout(seed: u64, params: &LayoutParams) -> FixtureSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_1a70);
    let n = rng.gen_range(params.min_words..=params.max_words);
    let mut pause_after = vec![false; n];
    for _ in 0..params.pauses.min(n.saturating_sub(1)) {
        loop {
            let k = rng.gen_range(0..n - 1);
            if !pause_after[k] {
                pause_after[k] = true;
                break;
            }
        }
    }
    let uniform = |rng: &mut ChaCha8Rng, (lo, hi): (f64, f64)| {
        if hi > lo { rng.gen_range(lo..hi) } else { lo }
    };
    let mut t = uniform(&mut rng, params.edge_silence_s);
    let mut words = Vec::with_capacity(n);
    for &pause in &pause_after {
        let text = LEXICON[rng.gen_range(0..LEXICON.len())].to_string();
        let d = uniform(&mut rng, params.word_duration_s);
        words.push(PlantedWord { text, start: t, end: t + d });
        t += d;
        if pause {
            t += uniform(&mut rng, params.pause_duration_s);
        }
    }
    let duration = t + uniform(&mut rng, params.edge_silence_s);
    FixtureSpec {
        words,
        frame_duration_s: DEFAULT_FRAME_DURATION_S,
        heads: DEFAULT_HEADS,
        noise_sigma: 0.0,
        seed,
        duration_s: Some(duration),
    }
}
