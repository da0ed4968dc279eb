use super::WordTiming;
use crate::align::TokenSpan;
use crate::tokenizer::{Token, TokenClass};

/// Groups aligned tokens into words.
///
/// Word pieces and fillers accumulate until a space token or a piece that
/// starts with whitespace. Punctuation is appended to the previous word
/// without touching its timing; punctuation before any word is prefixed to the
/// first word. Special tokens and tokens without a span are ignored.
pub fn group_words(spans: &[TokenSpan], tokens: &[Token]) -> Vec<WordTiming> {
    let mut span_of: Vec<Option<&TokenSpan>> = vec![None; tokens.len()];
    for span in spans {
        if let Some(slot) = span_of.get_mut(span.token_index) {
            *slot = Some(span);
        }
    }

    let mut words: Vec<WordTiming> = Vec::new();
    let mut current: Option<WordTiming> = None;
    let mut prefix = String::new();
    let mut prefix_indices = Vec::new();

    for (index, token) in tokens.iter().enumerate() {
        match token.class {
            TokenClass::Special => {}
            TokenClass::Space => words.extend(current.take()),
            TokenClass::Punctuation => {
                if let Some(word) = current.as_mut().or(words.last_mut()) {
                    word.text.push_str(&token.text);
                    word.source_token_indices.push(index);
                } else {
                    prefix.push_str(&token.text);
                    prefix_indices.push(index);
                }
            }
            TokenClass::WordPiece | TokenClass::Filler => {
                let Some(span) = span_of[index] else { continue };
                if token.text.starts_with(char::is_whitespace) {
                    words.extend(current.take());
                }
                let piece = token.text.trim_start();
                match current.as_mut() {
                    Some(word) => {
                        word.text.push_str(piece);
                        word.offset_s = word.offset_s.max(span.offset_s);
                        word.source_token_indices.push(index);
                    }
                    None => {
                        let mut text = std::mem::take(&mut prefix);
                        text.push_str(piece);
                        let mut source = std::mem::take(&mut prefix_indices);
                        source.push(index);
                        current = Some(WordTiming {
                            text,
                            onset_s: span.onset_s,
                            offset_s: span.offset_s,
                            source_token_indices: source,
                        });
                    }
                }
            }
        }
    }
    words.extend(current);
    words
}
