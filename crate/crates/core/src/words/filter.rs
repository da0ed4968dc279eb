use super::TIME_EPS_S;
use crate::align::TokenSpan;
use crate::tokenizer::{Token, TokenClass};

/// Drops tokens whose span is shorter than `min_duration_s`, together with
/// their spans. Space tokens are kept whatever their length. Returned spans are
/// re-indexed into the returned token list.
pub fn filter_short_tokens(
    spans: &[TokenSpan],
    tokens: &[Token],
    min_duration_s: f64,
) -> (Vec<TokenSpan>, Vec<Token>) {
    let mut removed = vec![false; tokens.len()];
    for span in spans {
        let Some(token) = tokens.get(span.token_index) else { continue };
        if token.class != TokenClass::Space && span.duration_s() < min_duration_s - TIME_EPS_S {
            removed[span.token_index] = true;
        }
    }

    let mut new_index = vec![usize::MAX; tokens.len()];
    let mut kept_tokens = Vec::with_capacity(tokens.len());
    for (i, token) in tokens.iter().enumerate() {
        if !removed[i] {
            new_index[i] = kept_tokens.len();
            kept_tokens.push(token.clone());
        }
    }
    let kept_spans = spans
        .iter()
        .filter(|s| s.token_index < tokens.len() && !removed[s.token_index])
        .map(|s| TokenSpan { token_index: new_index[s.token_index], ..*s })
        .collect();
    (kept_spans, kept_tokens)
}
