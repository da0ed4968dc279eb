use std::collections::HashMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::bytes;
use super::class::{classify, TokenClass};
use crate::error::{Error, Result};

/// A token as seen by the aligner: vocabulary id, decoded text and class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Token {
    pub id: u32,
    pub text: String,
    pub class: TokenClass,
}

impl Token {
    /// Builds a token whose class is derived from `text`.
    pub fn new(id: u32, text: impl Into<String>) -> Self {
        let text = text.into();
        let class = classify(&text);
        Token { id, text, class }
    }
}

/// A BPE vocabulary plus its ordered merge list.
///
/// Vocabulary keys are stored exactly as they appear in the vocab file; for
/// byte-level tokenizers that means the printable byte alphabet (`Ġ` for space).
#[derive(Debug, Clone)]
pub struct TokenizerSpec {
    vocab: HashMap<String, u32>,
    merges: Vec<(String, String)>,
    byte_level: bool,
    id_to_token: HashMap<u32, String>,
    /// (left id, right id) -> (rank, merged id)
    merge_table: HashMap<(u32, u32), (usize, u32)>,
}

impl PartialEq for TokenizerSpec {
    fn eq(&self, other: &Self) -> bool {
        self.byte_level == other.byte_level
            && self.merges == other.merges
            && self.vocab == other.vocab
    }
}

impl Eq for TokenizerSpec {}

impl TokenizerSpec {
    pub fn new(
        vocab: HashMap<String, u32>,
        merges: Vec<(String, String)>,
        byte_level: bool,
    ) -> Result<Self> {
        let mut id_to_token = HashMap::with_capacity(vocab.len());
        for (token, &id) in &vocab {
            if let Some(prev) = id_to_token.insert(id, token.clone()) {
                return Err(Error::Consistency(format!(
                    "id {id} is shared by {prev:?} and {token:?}"
                )));
            }
        }

        let mut merge_table = HashMap::with_capacity(merges.len());
        for (rank, (left, right)) in merges.iter().enumerate() {
            let joined = format!("{left}{right}");
            let Some(&merged) = vocab.get(&joined) else {
                return Err(Error::Consistency(format!(
                    "merge {rank} ({left:?}, {right:?}) produces {joined:?}, which is not in the vocabulary"
                )));
            };
            // Members missing from the vocabulary can never be formed, so the
            // merge is unreachable but harmless.
            if let (Some(&l), Some(&r)) = (vocab.get(left), vocab.get(right)) {
                if merge_table.insert((l, r), (rank, merged)).is_some() {
                    return Err(Error::Consistency(format!(
                        "merge ({left:?}, {right:?}) appears more than once"
                    )));
                }
            }
        }

        Ok(TokenizerSpec {
            vocab,
            merges,
            byte_level,
            id_to_token,
            merge_table,
        })
    }

    /// Loads a `vocab.json` / `merges.txt` pair. Byte-level mode is enabled when
    /// the vocabulary covers the whole byte alphabet.
    pub fn load(vocab_file: impl AsRef<Path>, merges_file: impl AsRef<Path>) -> Result<Self> {
        let vocab_file = vocab_file.as_ref();
        let merges_file = merges_file.as_ref();
        let vocab_text =
            std::fs::read_to_string(vocab_file).map_err(|e| Error::io(vocab_file, e))?;
        let merges_text =
            std::fs::read_to_string(merges_file).map_err(|e| Error::io(merges_file, e))?;
        Self::parse(
            &vocab_text,
            &vocab_file.display().to_string(),
            &merges_text,
            &merges_file.display().to_string(),
        )
    }

    pub fn from_strs(vocab_json: &str, merges_txt: &str) -> Result<Self> {
        Self::parse(vocab_json, "vocab", merges_txt, "merges")
    }

    fn parse(vocab_json: &str, vocab_name: &str, merges_txt: &str, merges_name: &str) -> Result<Self> {
        let vocab: HashMap<String, u32> =
            serde_json::from_str(vocab_json).map_err(|e| Error::Format {
                context: vocab_name.to_string(),
                line: e.line(),
                message: e.to_string(),
            })?;
        let merges = parse_merges(merges_txt, merges_name)?;
        let byte_level = bytes::alphabet().all(|c| vocab.contains_key(c.encode_utf8(&mut [0; 4])));
        Self::new(vocab, merges, byte_level)
    }

    /// The multilingual Whisper tokenizer bundled with this crate.
    pub fn whisper_multilingual() -> Self {
        static VOCAB: &str = include_str!("../../assets/whisper/vocab.json");
        static MERGES: &str = include_str!("../../assets/whisper/merges.txt");
        Self::from_strs(VOCAB, MERGES).expect("bundled tokenizer is valid")
    }

    pub fn vocab(&self) -> &HashMap<String, u32> {
        &self.vocab
    }

    pub fn merges(&self) -> &[(String, String)] {
        &self.merges
    }

    pub fn byte_level(&self) -> bool {
        self.byte_level
    }

    pub fn len(&self) -> usize {
        self.vocab.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vocab.is_empty()
    }

    pub fn id(&self, token: &str) -> Option<u32> {
        self.vocab.get(token).copied()
    }

    /// Raw vocabulary string for `id`.
    pub fn token_str(&self, id: u32) -> Option<&str> {
        self.id_to_token.get(&id).map(String::as_str)
    }

    pub(crate) fn merge(&self, left: u32, right: u32) -> Option<(usize, u32)> {
        self.merge_table.get(&(left, right)).copied()
    }

    /// How a single space is spelled in this vocabulary.
    pub fn space_symbol(&self) -> char {
        if self.byte_level {
            bytes::SPACE
        } else {
            ' '
        }
    }

    /// Raw bytes of the vocabulary entry `id`.
    pub fn token_bytes(&self, id: u32, out: &mut Vec<u8>) -> bool {
        let Some(token) = self.token_str(id) else {
            return false;
        };
        if self.byte_level {
            bytes::decode_bytes(token, out);
        } else {
            out.extend_from_slice(token.as_bytes());
        }
        true
    }

    /// Decoded, classified token for `id`.
    pub fn token(&self, id: u32) -> Option<Token> {
        let mut raw = Vec::new();
        self.token_bytes(id, &mut raw)
            .then(|| Token::new(id, String::from_utf8_lossy(&raw)))
    }

    /// Vocabulary as (token, id) pairs in id order.
    pub fn entries_by_id(&self) -> Vec<(&str, u32)> {
        let mut entries: Vec<_> = self.vocab.iter().map(|(t, &i)| (t.as_str(), i)).collect();
        entries.sort_by_key(|&(_, id)| id);
        entries
    }

    pub fn vocab_json(&self) -> String {
        let mut out = String::from("{");
        for (i, (token, id)) in self.entries_by_id().into_iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            out.push_str(&serde_json::to_string(token).expect("string serializes"));
            out.push_str(": ");
            out.push_str(&id.to_string());
        }
        out.push('}');
        out
    }

    pub fn merges_txt(&self) -> String {
        let mut out = String::new();
        for (left, right) in &self.merges {
            out.push_str(left);
            out.push(' ');
            out.push_str(right);
            out.push('\n');
        }
        out
    }

    pub fn save(&self, vocab_file: impl AsRef<Path>, merges_file: impl AsRef<Path>) -> Result<()> {
        let vocab_file = vocab_file.as_ref();
        let merges_file = merges_file.as_ref();
        std::fs::write(vocab_file, self.vocab_json()).map_err(|e| Error::io(vocab_file, e))?;
        std::fs::write(merges_file, self.merges_txt()).map_err(|e| Error::io(merges_file, e))?;
        Ok(())
    }
}

/// Parses a merges file: one `left right` pair per line, rank = position.
///
/// Lines starting with `#` are headers. The separator is the first space after
/// the first character, so a left member that is itself a space still parses.
pub fn parse_merges(text: &str, context: &str) -> Result<Vec<(String, String)>> {
    let mut merges = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if (i == 0 && line.starts_with('#')) || line.is_empty() {
            continue;
        }
        let first_len = line.chars().next().map_or(0, char::len_utf8);
        let split = line[first_len..].find(' ').map(|p| p + first_len);
        match split {
            Some(p) if p + 1 < line.len() => {
                merges.push((line[..p].to_string(), line[p + 1..].to_string()));
            }
            _ => {
                return Err(Error::Format {
                    context: context.to_string(),
                    line: i + 1,
                    message: format!("expected `left right`, got {line:?}"),
                })
            }
        }
    }
    Ok(merges)
}
