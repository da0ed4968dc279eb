use serde::{Deserialize, Serialize};

/// Role of a token in alignment. Derived from the token text alone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TokenClass {
    WordPiece,
    Space,
    Punctuation,
    Special,
    Filler,
}

impl TokenClass {
    /// Whether tokens of this class get a row in the alignment cost matrix.
    pub fn is_aligned(self) -> bool {
        matches!(
            self,
            TokenClass::WordPiece | TokenClass::Space | TokenClass::Filler
        )
    }
}

/// Non-ASCII characters treated as punctuation in addition to ASCII punctuation.
pub const TYPOGRAPHIC_PUNCTUATION: &[char] = &[
    '\u{2018}', '\u{2019}', '\u{201A}', '\u{201B}', // single quotes
    '\u{201C}', '\u{201D}', '\u{201E}', '\u{201F}', // double quotes
    '\u{2039}', '\u{203A}', '\u{00AB}', '\u{00BB}', // guillemets
    '\u{2010}', '\u{2011}', '\u{2012}', '\u{2013}', '\u{2014}', '\u{2015}', // dashes
    '\u{2026}', // ellipsis
    '\u{00A1}', '\u{00BF}', // inverted ! and ?
    '\u{00B7}', '\u{2022}', // middle dot, bullet
];

pub fn is_punctuation(c: char) -> bool {
    c.is_ascii_punctuation() || TYPOGRAPHIC_PUNCTUATION.contains(&c)
}

const FILLERS: [&str; 2] = ["uh", "um"];

pub fn is_filler(text: &str) -> bool {
    let core = text.trim_start_matches(' ');
    FILLERS.iter().any(|f| core.eq_ignore_ascii_case(f))
}

pub fn classify(text: &str) -> TokenClass {
    if text.len() >= 4 && text.starts_with("<|") && text.ends_with("|>") {
        TokenClass::Special
    } else if !text.is_empty() && text.chars().all(char::is_whitespace) {
        TokenClass::Space
    } else if !text.is_empty() && text.chars().all(is_punctuation) {
        TokenClass::Punctuation
    } else if is_filler(text) {
        TokenClass::Filler
    } else {
        TokenClass::WordPiece
    }
}
