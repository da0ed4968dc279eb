use serde::{Deserialize, Serialize};

use super::cost::CostMatrix;
use crate::error::{Error, Result};

/// A monotonic, continuous path from `(0, 0)` to `(rows - 1, frames - 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlignPath {
    /// `(row, frame)` cells in visiting order.
    pub steps: Vec<(usize, usize)>,
}

impl AlignPath {
    /// Checks endpoints and that every step is one of `(+1,0)`, `(0,+1)`, `(+1,+1)`.
    pub fn validate(&self, rows: usize, frames: usize) -> Result<()> {
        let fail = |m: String| Err(Error::InvalidInput(m));
        match (self.steps.first(), self.steps.last()) {
            (Some(&(0, 0)), Some(&last)) if last == (rows - 1, frames - 1) => {}
            _ => return fail(format!("path must run from (0,0) to ({}, {})", rows - 1, frames - 1)),
        }
        for w in self.steps.windows(2) {
            let (a, b) = (w[0], w[1]);
            let step = (b.0.wrapping_sub(a.0), b.1.wrapping_sub(a.1));
            if !matches!(step, (1, 0) | (0, 1) | (1, 1)) {
                return fail(format!("illegal step {a:?} -> {b:?}"));
            }
        }
        Ok(())
    }

    pub fn cost(&self, cost: &CostMatrix) -> f64 {
        self.steps.iter().map(|&(i, j)| cost.get(i, j)).sum()
    }
}

/// Minimum-cost alignment path under unit-weight steps.
///
/// On ties the backtrace prefers the diagonal predecessor, then the one on the
/// same row (frame advance), then the one on the same frame (token advance).
pub fn dtw(cost: &CostMatrix) -> Result<AlignPath> {
    let (m, n) = (cost.rows(), cost.frames());
    if m == 0 || n == 0 {
        return Err(Error::InvalidInput("empty cost matrix".into()));
    }

    let mut acc = vec![f64::INFINITY; m * n];
    let at = |i: usize, j: usize| i * n + j;
    for i in 0..m {
        for j in 0..n {
            let best = if i == 0 && j == 0 {
                0.0
            } else {
                let diag = if i > 0 && j > 0 { acc[at(i - 1, j - 1)] } else { f64::INFINITY };
                let left = if j > 0 { acc[at(i, j - 1)] } else { f64::INFINITY };
                let up = if i > 0 { acc[at(i - 1, j)] } else { f64::INFINITY };
                diag.min(left).min(up)
            };
            acc[at(i, j)] = best + cost.get(i, j);
        }
    }

    let (mut i, mut j) = (m - 1, n - 1);
    let mut steps = vec![(i, j)];
    while (i, j) != (0, 0) {
        let mut choice = None;
        let mut best = f64::INFINITY;
        for (di, dj) in [(1, 1), (0, 1), (1, 0)] {
            if i < di || j < dj {
                continue;
            }
            let v = acc[at(i - di, j - dj)];
            if v < best {
                best = v;
                choice = Some((i - di, j - dj));
            }
        }
        (i, j) = choice.expect("an interior cell always has a finite predecessor");
        steps.push((i, j));
    }
    steps.reverse();
    Ok(AlignPath { steps })
}
