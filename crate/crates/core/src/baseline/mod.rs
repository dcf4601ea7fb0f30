//! Comparison baselines: full randomized response and an ARR-style
//! (randomize, then sample) publication with the two-step triangle count.

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::estimators::{CountOutcome, EdgeSource};
use crate::graph::{count_triangles, Graph};
use crate::privacy::{laplace_sample, rr_flip, rr_one_probability, BudgetLedger, Step};
use crate::protocol::{bits_per_index, CommLedger, DegreeReport};
use crate::rng::{Role, Streams};

/// Published noisy lower-triangle rows without grouping.
#[derive(Debug, Clone, PartialEq)]
pub struct NoisyGraphView {
    pub mu: f64,
    pub eps1: f64,
    /// `rows[i]`: sorted `j < i` with `a'_{i,j} = 1`.
    pub rows: Vec<Vec<u32>>,
    words: usize,
    bits: Vec<u64>,
}

impl NoisyGraphView {
    fn new(mu: f64, eps1: f64, rows: Vec<Vec<u32>>) -> Self {
        let n = rows.len();
        let words = n.div_ceil(64);
        let mut bits = vec![0u64; words * n];
        for (i, row) in rows.iter().enumerate() {
            for &j in row {
                bits[i * words + j as usize / 64] |= 1 << (j % 64);
            }
        }
        NoisyGraphView { mu, eps1, rows, words, bits }
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    /// `a'_{i,j}` for `j < i`.
    #[inline]
    pub fn has(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    fn p(&self) -> f64 {
        rr_one_probability(true, self.eps1)
    }

    fn q(&self) -> f64 {
        rr_one_probability(false, self.eps1)
    }

    /// `(1{a'}/μ − q)/(p − q)`, unbiased for the edge bit.
    #[inline]
    pub fn edge_estimate(&self, publisher: usize, key: usize) -> f64 {
        let (p, q) = (self.p(), self.q());
        let bit = if self.has(publisher, key) { 1.0 / self.mu } else { 0.0 };
        (bit - q) / (p - q)
    }

    /// The noisy graph `G'` as a plain graph.
    pub fn to_graph(&self) -> Graph {
        Graph::from_edges(
            self.n(),
            self.rows.iter().enumerate().flat_map(|(i, r)| r.iter().map(move |&j| (i, j as usize))),
        )
    }

    /// Upload is the user's own row; a triangle viewer downloads the rows of
    /// every `k` it reported as a noisy neighbor.
    pub fn triangle_ledger(&self) -> CommLedger {
        let bits = bits_per_index(self.n());
        let upload_bits = self.rows.iter().map(|r| r.len() as u64 * bits as u64).collect();
        let download_bits = self
            .rows
            .iter()
            .map(|r| r.iter().map(|&k| self.rows[k as usize].len() as u64).sum::<u64>() * bits as u64)
            .collect();
        CommLedger { upload_bits, download_bits, bits_per_index: bits }
    }

    /// Every viewer downloads every other row.
    pub fn full_ledger(&self) -> CommLedger {
        let bits = bits_per_index(self.n());
        let total: u64 = self.rows.iter().map(|r| r.len() as u64).sum();
        let upload_bits: Vec<u64> = self.rows.iter().map(|r| r.len() as u64 * bits as u64).collect();
        let download_bits = self.rows.iter().map(|r| (total - r.len() as u64) * bits as u64).collect();
        CommLedger { upload_bits, download_bits, bits_per_index: bits }
    }
}

impl EdgeSource for NoisyGraphView {
    fn n(&self) -> usize {
        NoisyGraphView::n(self)
    }

    fn estimate_pair(&self, _viewer: usize, u: usize, v: usize) -> f64 {
        if u > v {
            self.edge_estimate(u, v)
        } else {
            self.edge_estimate(v, u)
        }
    }

    fn variance_bound(&self) -> f64 {
        let (p, q, mu) = (self.p(), self.q(), self.mu);
        let var = |r: f64| mu * r * (1.0 - mu * r) / (mu * mu * (p - q) * (p - q));
        var(p).max(var(q))
    }
}

/// Randomized response on every lower-triangle bit.
pub fn rr_publish(g: &Graph, eps1: f64, streams: &Streams) -> NoisyGraphView {
    arr_publish(g, eps1, 1.0, streams).expect("μ = 1 is valid")
}

/// Randomized response, then each resulting one kept with probability `μ`.
pub fn arr_publish(g: &Graph, eps1: f64, mu: f64, streams: &Streams) -> Result<NoisyGraphView> {
    if !(mu > 0.0 && mu <= 1.0) {
        return Err(Error::invalid(format!("μ must lie in (0, 1], got {mu}")));
    }
    let rows = (0..g.n())
        .into_par_iter()
        .map(|i| {
            let mut rng = streams.rng(Role::BaselineRr, i as u64);
            let mut keep = streams.rng(Role::BaselineSampling, i as u64);
            let low = g.low_neighbors(i);
            let mut next = 0;
            let mut row = Vec::new();
            for j in 0..i {
                let bit = next < low.len() && low[next] == j;
                if bit {
                    next += 1;
                }
                if rr_flip(bit, eps1, &mut rng) && (mu >= 1.0 || keep.gen::<f64>() < mu) {
                    row.push(j as u32);
                }
            }
            row
        })
        .collect();
    Ok(NoisyGraphView::new(mu, eps1, rows))
}

/// Per-user result of the two-step count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoStepLocal {
    pub raw: f64,
    pub noised: f64,
    pub sensitivity: f64,
    pub dropped_neighbors: usize,
}

/// User `i`'s four-cycle-trick sum over the given low neighbors.
pub fn two_step_local_sum(view: &NoisyGraphView, i: usize, neighbors: &[usize]) -> f64 {
    let (p, q, mu) = (view.p(), view.q(), view.mu);
    let scale = 1.0 / (mu * mu * p * (p - q));
    let mut sum = 0.0;
    for &k in neighbors {
        if !view.has(i, k) {
            continue;
        }
        for &j in neighbors {
            if j < k {
                let bit = if view.has(k, j) { 1.0 } else { 0.0 };
                sum += (bit - mu * q) * scale;
            }
        }
    }
    sum
}

/// Two-step triangle counting with the four-cycle trick, degree clipping at
/// `d̂` and Laplace noise at the corrected sensitivity.
pub fn two_step_triangle(
    g: &Graph,
    view: &NoisyGraphView,
    reports: &[DegreeReport],
    eps0: f64,
    eps2: f64,
    beta: f64,
    streams: &Streams,
    ledger: &mut BudgetLedger,
) -> Result<(CountOutcome, Vec<TwoStepLocal>)> {
    ledger.debit(Step::Counting, eps2)?;
    let (p, q, mu) = (view.p(), view.q(), view.mu);
    let term_max = (1.0 - mu * q).max(mu * q) / (mu * mu * p * (p - q));
    let locals: Vec<TwoStepLocal> = (0..g.n())
        .into_par_iter()
        .map(|i| {
            let mut rng = streams.rng(Role::FinalNoise, i as u64);
            let d_hat = reports[i].low_bound(eps0, beta).floor() as usize;
            let mut kept = g.low_neighbors(i).to_vec();
            let dropped = kept.len().saturating_sub(d_hat);
            if dropped > 0 {
                kept.shuffle(&mut rng);
                kept.truncate(d_hat);
                kept.sort_unstable();
            }
            let raw = two_step_local_sum(view, i, &kept);
            let sensitivity = d_hat as f64 * term_max;
            let noised = raw + if sensitivity > 0.0 { laplace_sample(sensitivity / eps2, &mut rng) } else { 0.0 };
            TwoStepLocal { raw, noised, sensitivity, dropped_neighbors: dropped }
        })
        .collect();
    let outcome = CountOutcome {
        estimate: crate::estimators::aggregate(&locals.iter().map(|l| l.noised).collect::<Vec<_>>()),
        raw: locals.iter().map(|l| l.raw).sum(),
        users_clipped: locals.iter().filter(|l| l.dropped_neighbors > 0).count(),
        terms_zeroed: 0,
        clamped: 0,
        max_excess: f64::NEG_INFINITY,
    };
    Ok((outcome, locals))
}

/// Triangles of the noisy graph with no debiasing. Diagnostic only.
pub fn naive_triangle_count(view: &NoisyGraphView) -> u64 {
    count_triangles(&view.to_graph())
}
