pub mod error;
pub mod tokenizer;

pub use error::{Error, Result};
pub mod align;
pub mod words;
pub mod metrics;
pub mod io;
pub mod pipeline;
pub mod synth;
