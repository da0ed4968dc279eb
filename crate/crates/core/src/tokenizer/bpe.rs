use std::sync::OnceLock;

use fancy_regex::Regex;

use super::bytes;
use super::spec::{Token, TokenizerSpec};
use crate::error::{Error, Result};

/// GPT-2 / Whisper pre-tokenization pattern. Spaces stay attached to the
/// start of the following word, never to the end of the previous one.
const PRETOKENIZE_PATTERN: &str =
    r"'s|'t|'re|'ve|'m|'ll|'d| ?\p{L}+| ?\p{N}+| ?[^\s\p{L}\p{N}]+|\s+(?!\S)|\s+";

fn pretokenizer() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(PRETOKENIZE_PATTERN).expect("valid pattern"))
}

/// Splits text into the chunks BPE runs on independently.
pub fn pretokenize(text: &str) -> Vec<&str> {
    let mut chunks = Vec::new();
    let mut last = 0;
    for m in pretokenizer().find_iter(text) {
        let m = m.expect("pretokenizer does not backtrack deeply");
        // The alternatives cover every character, but keep any gap rather than lose it.
        if m.start() > last {
            chunks.push(&text[last..m.start()]);
        }
        chunks.push(m.as_str());
        last = m.end();
    }
    if last < text.len() {
        chunks.push(&text[last..]);
    }
    chunks
}

impl TokenizerSpec {
    fn initial_symbols(&self, chunk: &str) -> Result<Vec<u32>> {
        let mut buf = [0u8; 4];
        if self.byte_level() {
            chunk
                .bytes()
                .map(|b| {
                    let c = bytes::byte_to_char(b);
                    self.id(c.encode_utf8(&mut buf))
                        .ok_or_else(|| Error::UnknownSymbol(c.to_string()))
                })
                .collect()
        } else {
            chunk
                .chars()
                .map(|c| {
                    self.id(c.encode_utf8(&mut buf))
                        .ok_or_else(|| Error::UnknownSymbol(c.to_string()))
                })
                .collect()
        }
    }

    /// Applies merges lowest rank first; every occurrence of the winning pair is
    /// merged left to right before the next rank is considered.
    fn merge_symbols(&self, mut symbols: Vec<u32>) -> Vec<u32> {
        loop {
            let best = symbols
                .windows(2)
                .filter_map(|w| self.merge(w[0], w[1]).map(|(rank, id)| (rank, w[0], w[1], id)))
                .min_by_key(|&(rank, ..)| rank);
            let Some((_, left, right, merged)) = best else {
                return symbols;
            };
            let mut out = Vec::with_capacity(symbols.len());
            let mut i = 0;
            while i < symbols.len() {
                if i + 1 < symbols.len() && symbols[i] == left && symbols[i + 1] == right {
                    out.push(merged);
                    i += 2;
                } else {
                    out.push(symbols[i]);
                    i += 1;
                }
            }
            symbols = out;
        }
    }

    /// Token ids for `text`.
    pub fn encode_ids(&self, text: &str) -> Result<Vec<u32>> {
        let mut ids = Vec::new();
        for chunk in pretokenize(text) {
            let symbols = self.initial_symbols(chunk)?;
            ids.extend(self.merge_symbols(symbols));
        }
        Ok(ids)
    }

    pub fn encode(&self, text: &str) -> Result<Vec<Token>> {
        self.encode_ids(text)?
            .into_iter()
            .map(|id| {
                self.token(id)
                    .ok_or_else(|| Error::Consistency(format!("merge produced unknown id {id}")))
            })
            .collect()
    }

    pub fn decode_ids(&self, ids: &[u32]) -> String {
        let mut raw = Vec::new();
        for &id in ids {
            self.token_bytes(id, &mut raw);
        }
        String::from_utf8_lossy(&raw).into_owned()
    }

    pub fn decode(&self, tokens: &[Token]) -> String {
        let ids: Vec<u32> = tokens.iter().map(|t| t.id).collect();
        self.decode_ids(&ids)
    }
}

/// Free-function form of [`TokenizerSpec::encode`].
pub fn bpe_encode(text: &str, spec: &TokenizerSpec) -> Result<Vec<Token>> {
    spec.encode(text)
}
