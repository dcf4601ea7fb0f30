use serde::{Deserialize, Serialize};

use crate::protocol::DegreeReport;

/// Bounds for the double-clipping mechanism.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClippingParams {
    pub beta: f64,
    pub d_hat: f64,
    pub b: f64,
    pub var_bound: f64,
    pub cov_bound: f64,
}

impl ClippingParams {
    /// Triangle bounds from public data. `var_bound` is `ω(1+σ̃⁺)/μ_c`;
    /// `collision` is `(s−1)/(ms−1)`.
    pub fn triangle(report: &DegreeReport, eps0: f64, beta: f64, var_bound: f64, collision: f64) -> Self {
        let d_hat = report.low_bound(eps0, beta);
        let var_bound = var_bound.max(0.0);
        let cov_bound = (2.0 * collision * var_bound).max(0.0);
        let b = d_hat + ((2.0 / beta) * (d_hat * var_bound + d_hat * d_hat * cov_bound)).sqrt();
        ClippingParams { beta, d_hat, b, var_bound, cov_bound }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClipOutcome {
    pub sum: f64,
    pub zeroed: usize,
    pub clamped: bool,
    /// Largest `|partial|` after clipping.
    pub max_partial: f64,
}

/// Greedy contribution clipping.
///
/// `terms[t]` touches the two endpoints `ends[t]` (indices below `width`).
/// While some endpoint's partial sum exceeds `bound` in magnitude, the
/// largest same-sign term touching it is zeroed.
pub fn clip_terms(terms: &mut [f64], ends: &[(u32, u32)], width: usize, bound: f64) -> ClipOutcome {
    let mut partial = vec![0.0; width];
    for (v, &(a, b)) in terms.iter().zip(ends) {
        partial[a as usize] += v;
        partial[b as usize] += v;
    }
    let over = |p: f64| p.abs() > bound;
    let mut out = ClipOutcome { sum: 0.0, zeroed: 0, clamped: false, max_partial: 0.0 };
    if partial.iter().any(|&p| over(p)) {
        // per endpoint: term ids by descending magnitude, split by sign
        let mut pos: Vec<Vec<u32>> = vec![Vec::new(); width];
        let mut neg: Vec<Vec<u32>> = vec![Vec::new(); width];
        for (t, (&v, &(a, b))) in terms.iter().zip(ends).enumerate() {
            let lists = if v > 0.0 { &mut pos } else if v < 0.0 { &mut neg } else { continue };
            lists[a as usize].push(t as u32);
            lists[b as usize].push(t as u32);
        }
        for l in pos.iter_mut().chain(neg.iter_mut()) {
            l.sort_by(|&x, &y| terms[y as usize].abs().total_cmp(&terms[x as usize].abs()).then(x.cmp(&y)));
        }
        let mut cursor_pos = vec![0usize; width];
        let mut cursor_neg = vec![0usize; width];
        let mut stack: Vec<usize> = (0..width).rev().collect();
        while let Some(x) = stack.pop() {
            while over(partial[x]) {
                let (list, cursor) = if partial[x] > 0.0 {
                    (&pos[x], &mut cursor_pos[x])
                } else {
                    (&neg[x], &mut cursor_neg[x])
                };
                while *cursor < list.len() && terms[list[*cursor] as usize] == 0.0 {
                    *cursor += 1;
                }
                let Some(&t) = list.get(*cursor) else {
                    out.clamped = true;
                    break;
                };
                let t = t as usize;
                let v = terms[t];
                terms[t] = 0.0;
                out.zeroed += 1;
                let (a, b) = (ends[t].0 as usize, ends[t].1 as usize);
                partial[a] -= v;
                partial[b] -= v;
                let other = if a == x { b } else { a };
                if over(partial[other]) {
                    stack.push(other);
                }
            }
        }
    }
    out.sum = terms.iter().sum();
    out.max_partial = partial.iter().fold(0.0, |m, p| m.max(p.abs()));
    if out.clamped {
        out.max_partial = out.max_partial.min(bound);
    }
    out
}
