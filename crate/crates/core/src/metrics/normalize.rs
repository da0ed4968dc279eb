use crate::tokenizer::is_punctuation;

fn is_apostrophe(c: char) -> bool {
    c == '\'' || c == '\u{2019}'
}

/// Text normalization used for content matching.
///
/// Lowercases, removes punctuation, and collapses whitespace. An apostrophe
/// between two alphanumeric characters survives (as `'`), so "don't" stays
/// intact while quotes around a word disappear.
pub fn normalize(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for word in text.split_whitespace() {
        let chars: Vec<char> = word.chars().collect();
        let mut cleaned = String::with_capacity(word.len());
        for (i, &c) in chars.iter().enumerate() {
            if is_apostrophe(c) {
                let inner = i > 0
                    && i + 1 < chars.len()
                    && chars[i - 1].is_alphanumeric()
                    && chars[i + 1].is_alphanumeric();
                if inner {
                    cleaned.push('\'');
                }
            } else if !is_punctuation(c) {
                cleaned.extend(c.to_lowercase());
            }
        }
        if !cleaned.is_empty() {
            if !out.is_empty() {
                out.push(' ');
            }
            out.push_str(&cleaned);
        }
    }
    out
}

/// Normalized words of every entry, flattened.
pub fn normalized_words<S: AsRef<str>>(texts: &[S]) -> Vec<String> {
    texts
        .iter()
        .flat_map(|t| {
            normalize(t.as_ref())
                .split(' ')
                .filter(|w| !w.is_empty())
                .map(str::to_string)
                .collect::<Vec<_>>()
        })
        .collect()
}
