use std::io::{Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::tokenizer::Token;

/// Encoder frame hop of the reference speech model, in seconds.
pub const DEFAULT_FRAME_DURATION_S: f64 = 0.02;

const MAGIC: &[u8; 4] = b"CWAT";
const VERSION: u32 = 1;

/// Raw cross-attention weights, shape `tokens x heads x frames`, stored
/// token-major, head-middle, frame-minor.
#[derive(Debug, Clone, PartialEq)]
pub struct AttentionTensor {
    pub tokens: usize,
    pub heads: usize,
    pub frames: usize,
    pub data: Vec<f32>,
}

impl AttentionTensor {
    pub fn new(tokens: usize, heads: usize, frames: usize, data: Vec<f32>) -> Result<Self> {
        if tokens == 0 || heads == 0 || frames == 0 {
            return Err(Error::InvalidBundle(format!(
                "dimensions must be positive, got {tokens}x{heads}x{frames}"
            )));
        }
        let expected = tokens
            .checked_mul(heads)
            .and_then(|n| n.checked_mul(frames))
            .ok_or_else(|| Error::InvalidBundle("dimensions overflow".into()))?;
        if data.len() != expected {
            return Err(Error::InvalidBundle(format!(
                "expected {expected} values for {tokens}x{heads}x{frames}, got {}",
                data.len()
            )));
        }
        if let Some(pos) = data.iter().position(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::InvalidBundle(format!(
                "value {} at flat index {pos} is negative or not finite",
                data[pos]
            )));
        }
        Ok(AttentionTensor {
            tokens,
            heads,
            frames,
            data,
        })
    }

    /// Attention of `head` while decoding `token`, over all frames.
    pub fn head_row(&self, token: usize, head: usize) -> &[f32] {
        let start = (token * self.heads + head) * self.frames;
        &self.data[start..start + self.frames]
    }

    pub fn write_to<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        w.write_all(MAGIC)?;
        for dim in [VERSION, self.tokens as u32, self.heads as u32, self.frames as u32] {
            w.write_all(&dim.to_le_bytes())?;
        }
        let mut buf = Vec::with_capacity(self.data.len() * 4);
        for v in &self.data {
            buf.extend_from_slice(&v.to_le_bytes());
        }
        w.write_all(&buf)
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(20 + self.data.len() * 4);
        self.write_to(&mut out).expect("writing to a Vec cannot fail");
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        Self::read_from(bytes)
    }

    pub fn read_from<R: Read>(mut r: R) -> Result<Self> {
        let bad = |m: String| Error::InvalidBundle(m);
        let mut header = [0u8; 20];
        r.read_exact(&mut header)
            .map_err(|_| bad("truncated CWAT header".into()))?;
        if &header[..4] != MAGIC {
            return Err(bad(format!("bad magic {:?}", &header[..4])));
        }
        let word = |i: usize| u32::from_le_bytes(header[4 + 4 * i..8 + 4 * i].try_into().unwrap());
        if word(0) != VERSION {
            return Err(bad(format!("unsupported CWAT version {}", word(0))));
        }
        let (t, h, n) = (word(1) as usize, word(2) as usize, word(3) as usize);
        let count = t
            .checked_mul(h)
            .and_then(|x| x.checked_mul(n))
            .ok_or_else(|| bad("dimensions overflow".into()))?;
        let mut raw = Vec::new();
        r.read_to_end(&mut raw)
            .map_err(|e| bad(format!("reading CWAT payload: {e}")))?;
        if raw.len() != count * 4 {
            return Err(bad(format!(
                "payload has {} bytes, header promises {} ({t}x{h}x{n} float32)",
                raw.len(),
                count * 4
            )));
        }
        let data = raw
            .chunks_exact(4)
            .map(|c| f32::from_le_bytes(c.try_into().unwrap()))
            .collect();
        Self::new(t, h, n, data)
    }

    pub fn read_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
        Self::from_bytes(&bytes)
    }

    pub fn write_file(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_bytes()).map_err(|e| Error::io(path, e))
    }
}

/// Attention weights together with the tokens they were recorded for.
#[derive(Debug, Clone, PartialEq)]
pub struct AttentionBundle {
    pub attention: AttentionTensor,
    pub tokens: Vec<Token>,
    pub frame_duration_s: f64,
}

impl AttentionBundle {
    pub fn new(attention: AttentionTensor, tokens: Vec<Token>, frame_duration_s: f64) -> Result<Self> {
        if tokens.len() != attention.tokens {
            return Err(Error::InvalidBundle(format!(
                "{} tokens but attention has {} token rows",
                tokens.len(),
                attention.tokens
            )));
        }
        if !(frame_duration_s.is_finite() && frame_duration_s > 0.0) {
            return Err(Error::InvalidBundle(format!(
                "frame duration must be positive, got {frame_duration_s}"
            )));
        }
        Ok(AttentionBundle {
            attention,
            tokens,
            frame_duration_s,
        })
    }

    pub fn frames(&self) -> usize {
        self.attention.frames
    }

    pub fn duration_s(&self) -> f64 {
        self.attention.frames as f64 * self.frame_duration_s
    }
}
