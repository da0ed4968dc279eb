//! GPT-2 style reversible mapping between raw bytes and printable characters.
//!
//! Printable Latin-1 bytes map to themselves; the remaining 68 bytes (controls,
//! space, NBSP, soft hyphen) are shifted to U+0100 onwards. A space byte becomes
//! `Ġ` (U+0120), which is why byte-level vocabularies spell leading spaces that way.

use std::sync::OnceLock;

struct Tables {
    to_char: [char; 256],
    to_byte: std::collections::HashMap<char, u8>,
}

fn tables() -> &'static Tables {
    static TABLES: OnceLock<Tables> = OnceLock::new();
    TABLES.get_or_init(|| {
        let printable = |b: u8| matches!(b, b'!'..=b'~' | 0xA1..=0xAC | 0xAE..=0xFF);
        let mut to_char = ['\0'; 256];
        let mut shifted = 0u32;
        for b in 0..=255u8 {
            to_char[b as usize] = if printable(b) {
                char::from(b)
            } else {
                let c = char::from_u32(256 + shifted).expect("valid scalar");
                shifted += 1;
                c
            };
        }
        let to_byte = to_char
            .iter()
            .enumerate()
            .map(|(b, &c)| (c, b as u8))
            .collect();
        Tables { to_char, to_byte }
    })
}

pub fn byte_to_char(b: u8) -> char {
    tables().to_char[b as usize]
}

pub fn char_to_byte(c: char) -> Option<u8> {
    tables().to_byte.get(&c).copied()
}

/// All 256 mapped characters in byte order.
pub fn alphabet() -> impl Iterator<Item = char> {
    tables().to_char.iter().copied()
}

pub fn encode_bytes(bytes: &[u8]) -> String {
    bytes.iter().map(|&b| byte_to_char(b)).collect()
}

/// Maps a byte-level token string back to raw bytes. Characters outside the
/// alphabet are passed through as their UTF-8 encoding.
pub fn decode_bytes(token: &str, out: &mut Vec<u8>) {
    for c in token.chars() {
        match char_to_byte(c) {
            Some(b) => out.push(b),
            None => {
                let mut buf = [0u8; 4];
                out.extend_from_slice(c.encode_utf8(&mut buf).as_bytes());
            }
        }
    }
}

/// The byte-level spelling of a single space.
pub const SPACE: char = '\u{0120}';

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn space_maps_to_g_dot() {
        assert_eq!(byte_to_char(b' '), SPACE);
        assert_eq!(byte_to_char(b'\n'), '\u{010A}');
        assert_eq!(byte_to_char(b'a'), 'a');
    }

    #[test]
    fn mapping_is_a_bijection() {
        let chars: std::collections::HashSet<char> = alphabet().collect();
        assert_eq!(chars.len(), 256);
        for b in 0..=255u8 {
            assert_eq!(char_to_byte(byte_to_char(b)), Some(b));
        }
    }
}
