use crate::error::{Error, Result};

use super::bundle::AttentionBundle;

/// Rows below this L2 norm are treated as carrying no attention.
pub const DEGENERATE_NORM: f64 = 1e-12;

/// Negated, L2-normalized, head-averaged attention, one row per aligned token.
#[derive(Debug, Clone, PartialEq)]
pub struct CostMatrix {
    rows: usize,
    frames: usize,
    values: Vec<f64>,
    /// Row -> index of the token in the original bundle.
    pub kept_index_map: Vec<usize>,
    /// Rows whose attention was all zero and got the uniform vector instead.
    pub degenerate_rows: Vec<usize>,
}

impl CostMatrix {
    /// Wraps arbitrary row-major costs; row `i` maps to token `i`.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let frames = rows.first().map_or(0, Vec::len);
        if rows.is_empty() || frames == 0 {
            return Err(Error::InvalidInput("cost matrix must be non-empty".into()));
        }
        if rows.iter().any(|r| r.len() != frames) {
            return Err(Error::InvalidInput("cost matrix rows differ in length".into()));
        }
        if rows.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("cost matrix has non-finite values".into()));
        }
        Ok(CostMatrix {
            rows: rows.len(),
            frames,
            values: rows.concat(),
            kept_index_map: (0..rows.len()).collect(),
            degenerate_rows: Vec::new(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn frames(&self) -> usize {
        self.frames
    }

    pub fn get(&self, row: usize, frame: usize) -> f64 {
        self.values[row * self.frames + frame]
    }

    pub fn row(&self, row: usize) -> &[f64] {
        &self.values[row * self.frames..(row + 1) * self.frames]
    }
}

/// Averages the heads of every aligned token, scales the mean to unit length
/// and negates it. Punctuation and special tokens get no row.
pub fn build_cost_matrix(bundle: &AttentionBundle) -> Result<CostMatrix> {
    let att = &bundle.attention;
    let frames = att.frames;
    let kept: Vec<usize> = bundle
        .tokens
        .iter()
        .enumerate()
        .filter(|(_, t)| t.class.is_aligned())
        .map(|(i, _)| i)
        .collect();
    if kept.is_empty() {
        return Err(Error::EmptyAlignment);
    }

    let mut values = Vec::with_capacity(kept.len() * frames);
    let mut degenerate_rows = Vec::new();
    let mut mean = vec![0f64; frames];
    for (row, &token) in kept.iter().enumerate() {
        mean.iter_mut().for_each(|v| *v = 0.0);
        for head in 0..att.heads {
            for (m, &a) in mean.iter_mut().zip(att.head_row(token, head)) {
                *m += f64::from(a);
            }
        }
        let heads = att.heads as f64;
        mean.iter_mut().for_each(|v| *v /= heads);

        let norm = mean.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm < DEGENERATE_NORM {
            log::warn!(
                "token {token} ({:?}) has no attention mass; using a uniform row",
                bundle.tokens[token].text
            );
            degenerate_rows.push(row);
            let u = -1.0 / (frames as f64).sqrt();
            values.extend(std::iter::repeat_n(u, frames));
        } else {
            values.extend(mean.iter().map(|v| -v / norm));
        }
    }

    Ok(CostMatrix {
        rows: kept.len(),
        frames,
        values,
        kept_index_map: kept,
        degenerate_rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::align::bundle::AttentionTensor;
    use crate::tokenizer::Token;

    fn bundle(texts: &[&str], heads: usize, frames: usize, data: Vec<f32>) -> AttentionBundle {
        let tokens = texts
            .iter()
            .enumerate()
            .map(|(i, t)| Token::new(i as u32, *t))
            .collect();
        let att = AttentionTensor::new(texts.len(), heads, frames, data).unwrap();
        AttentionBundle::new(att, tokens, 0.02).unwrap()
    }

    #[test]
    fn three_four_five() {
        let c = build_cost_matrix(&bundle(&["Hi"], 1, 2, vec![3.0, 4.0])).unwrap();
        assert!((c.get(0, 0) + 0.6).abs() < 1e-12);
        assert!((c.get(0, 1) + 0.8).abs() < 1e-12);
    }

    #[test]
    fn heads_are_averaged() {
        let c = build_cost_matrix(&bundle(&["Hi"], 2, 2, vec![1.0, 0.0, 0.0, 1.0])).unwrap();
        let want = -std::f64::consts::FRAC_1_SQRT_2;
        assert!((c.get(0, 0) - want).abs() < 1e-9);
        assert!((c.get(0, 1) - want).abs() < 1e-9);
    }

    #[test]
    fn punctuation_is_dropped() {
        let c = build_cost_matrix(&bundle(&["Hi", "."], 1, 2, vec![1.0, 0.0, 0.0, 1.0])).unwrap();
        assert_eq!(c.rows(), 1);
        assert_eq!(c.kept_index_map, vec![0]);
    }

    #[test]
    fn special_and_punctuation_only_is_empty() {
        let err = build_cost_matrix(&bundle(&["<|en|>", ",", "."], 1, 1, vec![1.0; 3])).unwrap_err();
        assert!(matches!(err, Error::EmptyAlignment));
    }

    #[test]
    fn zero_row_becomes_uniform() {
        let c = build_cost_matrix(&bundle(&["a", "b"], 1, 4, vec![0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0]))
            .unwrap();
        assert_eq!(c.degenerate_rows, vec![0]);
        for j in 0..4 {
            assert!((c.get(0, j) + 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn rows_have_unit_norm() {
        let data: Vec<f32> = (0..2 * 3 * 5).map(|i| ((i * 7) % 11) as f32 + 0.5).collect();
        let c = build_cost_matrix(&bundle(&["a", " ", "b"], 2, 5, data)).unwrap();
        for r in 0..c.rows() {
            let n: f64 = c.row(r).iter().map(|v| v * v).sum();
            assert!((n - 1.0).abs() < 1e-12);
            assert!(c.row(r).iter().all(|&v| v <= 0.0));
        }
    }
}
