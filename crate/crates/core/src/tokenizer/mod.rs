//! Byte-level BPE tokenizers and the space-stripping retokenization.

pub mod bpe;
pub mod bytes;
pub mod class;
pub mod retokenize;
pub mod spec;

pub use bpe::{bpe_encode, pretokenize};
pub use class::{classify, is_punctuation, TokenClass};
pub use retokenize::{is_retokenized, retokenize, retokenize_with_summary, space_coverage, RetokenizeSummary};
pub use spec::{Token, TokenizerSpec};
