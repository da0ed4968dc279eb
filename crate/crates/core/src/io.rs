//! JSON file formats: alignment manifests, word timings and references.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::align::{AttentionBundle, AttentionTensor, DEFAULT_FRAME_DURATION_S};
use crate::error::{Error, Result};
use crate::metrics::{ReferenceWord, TimedWord};
use crate::pipeline::{AlignOptions, Alignment};
use crate::tokenizer::{classify, Token, TokenClass};

fn default_frame_duration() -> f64 {
    DEFAULT_FRAME_DURATION_S
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifestToken {
    pub id: u32,
    pub text: String,
    /// Derived from the text when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class: Option<TokenClass>,
}

impl From<&Token> for ManifestToken {
    fn from(t: &Token) -> Self {
        ManifestToken {
            id: t.id,
            text: t.text.clone(),
            class: Some(t.class),
        }
    }
}

impl From<&ManifestToken> for Token {
    fn from(t: &ManifestToken) -> Self {
        Token {
            id: t.id,
            text: t.text.clone(),
            class: t.class.unwrap_or_else(|| classify(&t.text)),
        }
    }
}

/// Describes one attention bundle on disk plus alignment options.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlignmentManifest {
    /// CWAT file, relative to the manifest's directory unless absolute.
    pub attention_file: PathBuf,
    pub tokens: Vec<ManifestToken>,
    #[serde(default = "default_frame_duration")]
    pub frame_duration_s: f64,
    #[serde(default)]
    pub options: AlignOptions,
}

impl AlignmentManifest {
    pub fn new(attention_file: impl Into<PathBuf>, tokens: &[Token], frame_duration_s: f64) -> Self {
        AlignmentManifest {
            attention_file: attention_file.into(),
            tokens: tokens.iter().map(ManifestToken::from).collect(),
            frame_duration_s,
            options: AlignOptions::default(),
        }
    }

    pub fn from_json(text: &str, context: &str) -> Result<Self> {
        let manifest: Self = serde_json::from_str(text).map_err(|e| json_error(e, context))?;
        manifest.options.validate()?;
        Ok(manifest)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<(Self, PathBuf)> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let manifest = Self::from_json(&text, &path.display().to_string())?;
        let base = path.parent().unwrap_or_else(|| Path::new(".")).to_path_buf();
        Ok((manifest, base))
    }

    pub fn tokens(&self) -> Vec<Token> {
        self.tokens.iter().map(Token::from).collect()
    }

    /// Reads the CWAT file and checks it against the token list.
    pub fn bundle(&self, base_dir: &Path) -> Result<AttentionBundle> {
        let path = base_dir.join(&self.attention_file);
        let tensor = AttentionTensor::read_file(&path)?;
        if tensor.tokens != self.tokens.len() {
            return Err(Error::InvalidBundle(format!(
                "manifest lists {} tokens but {} has {}",
                self.tokens.len(),
                path.display(),
                tensor.tokens
            )));
        }
        AttentionBundle::new(tensor, self.tokens(), self.frame_duration_s)
    }

    pub fn to_json(&self) -> String {
        to_json_pretty(self)
    }
}

fn json_error(e: serde_json::Error, context: &str) -> Error {
    Error::Format {
        context: context.to_string(),
        line: e.line(),
        message: e.to_string(),
    }
}

pub(crate) fn to_json_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

/// Times are written with microsecond resolution.
pub fn round_time(t: f64) -> f64 {
    (t * 1e6).round() / 1e6
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WordEntry {
    pub text: String,
    pub start: f64,
    pub end: f64,
}

impl TimedWord for WordEntry {
    fn text(&self) -> &str {
        &self.text
    }
    fn onset_s(&self) -> f64 {
        self.start
    }
    fn offset_s(&self) -> f64 {
        self.end
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PauseEntry {
    pub start: f64,
    pub end: f64,
}

/// `{"words": [...], "pauses": [...]}`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WordTimingsFile {
    pub words: Vec<WordEntry>,
    #[serde(default)]
    pub pauses: Vec<PauseEntry>,
}

impl From<&Alignment> for WordTimingsFile {
    fn from(a: &Alignment) -> Self {
        WordTimingsFile {
            words: a
                .words
                .iter()
                .map(|w| WordEntry {
                    text: w.text.clone(),
                    start: round_time(w.onset_s),
                    end: round_time(w.offset_s),
                })
                .collect(),
            pauses: a
                .pauses
                .iter()
                .map(|p| PauseEntry {
                    start: round_time(p.onset_s),
                    end: round_time(p.offset_s),
                })
                .collect(),
        }
    }
}

impl WordTimingsFile {
    pub fn to_json(&self) -> String {
        to_json_pretty(self)
    }
}

pub fn reference_to_json(words: &[ReferenceWord]) -> String {
    let rounded: Vec<ReferenceWord> = words
        .iter()
        .map(|w| ReferenceWord {
            text: w.text.clone(),
            onset_s: round_time(w.onset_s),
            offset_s: round_time(w.offset_s),
        })
        .collect();
    to_json_pretty(&rounded)
}

fn check_ordered<W: TimedWord>(words: &[W], context: &str) -> Result<()> {
    for (i, w) in words.iter().enumerate() {
        if !(w.onset_s().is_finite() && w.offset_s().is_finite() && w.onset_s() < w.offset_s()) {
            return Err(Error::InvalidInput(format!(
                "{context}: word {i} ({:?}) needs start < end",
                w.text()
            )));
        }
    }
    Ok(())
}

/// Reads a reference annotation: `[{"word": .., "start": .., "end": ..}]`.
pub fn parse_reference(text: &str, context: &str) -> Result<Vec<ReferenceWord>> {
    let words: Vec<ReferenceWord> = serde_json::from_str(text).map_err(|e| json_error(e, context))?;
    check_ordered(&words, context)?;
    Ok(words)
}

/// Reads a hypothesis: either a word-timing file or a reference-style list.
pub fn parse_hypothesis(text: &str, context: &str) -> Result<Vec<ReferenceWord>> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Hyp {
        Timings(WordTimingsFile),
        List(Vec<ReferenceWord>),
    }
    let hyp: Hyp = serde_json::from_str(text).map_err(|e| json_error(e, context))?;
    let words = match hyp {
        Hyp::Timings(f) => f
            .words
            .into_iter()
            .map(|w| ReferenceWord {
                text: w.text,
                onset_s: w.start,
                offset_s: w.end,
            })
            .collect(),
        Hyp::List(words) => words,
    };
    check_ordered(&words, context)?;
    Ok(words)
}

pub fn read_to_string(path: impl AsRef<Path>) -> Result<String> {
    let path = path.as_ref();
    std::fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

pub fn write_string(path: impl AsRef<Path>, contents: &str) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, contents).map_err(|e| Error::io(path, e))
}
