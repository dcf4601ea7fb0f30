use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{clip_terms, ClippingParams, CountOutcome};
use crate::error::Result;
use crate::graph::Graph;
use crate::privacy::{laplace_sample, BudgetLedger, Step};
use crate::protocol::Publication;
use crate::rng::{Role, Streams};

/// Per-pair terms of a user's local sum. `ends` index into `neighbors`.
#[derive(Debug, Clone, PartialEq)]
pub struct PairTerms {
    pub user: usize,
    pub neighbors: Vec<usize>,
    pub terms: Vec<f64>,
    pub ends: Vec<(u32, u32)>,
}

impl PairTerms {
    pub fn raw_sum(&self) -> f64 {
        self.terms.iter().sum()
    }

    /// Sum of the terms touching each neighbor.
    pub fn partials(&self) -> Vec<f64> {
        let mut p = vec![0.0; self.neighbors.len()];
        for (v, &(a, b)) in self.terms.iter().zip(&self.ends) {
            p[a as usize] += v;
            p[b as usize] += v;
        }
        p
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LocalTriangleEstimate {
    pub user: usize,
    /// `|W_i|`, the number of low-neighbor pairs.
    pub pairs: usize,
    pub raw_sum: f64,
    pub clipped_sum: f64,
    pub noised: f64,
    pub clipped_terms: usize,
    pub clamped: bool,
    pub bound: f64,
    pub max_partial: f64,
}

/// Sum of `ã_{k,h_k(j)}` over pairs `j < k` of user `i`'s low neighbors.
pub fn triangle_raw_sum(g: &Graph, i: usize, publication: &Publication) -> PairTerms {
    let neighbors = g.low_neighbors(i).to_vec();
    let d = neighbors.len();
    let mut terms = Vec::with_capacity(d * d.saturating_sub(1) / 2);
    let mut ends = Vec::with_capacity(terms.capacity());
    for b in 1..d {
        for a in 0..b {
            terms.push(publication.estimate(i, neighbors[b], neighbors[a]));
            ends.push((a as u32, b as u32));
        }
    }
    PairTerms { user: i, neighbors, terms, ends }
}

/// Clips the local terms to `params.b` and adds `Laplace(b/ε2)`.
pub fn clip_and_noise<R: Rng + ?Sized>(
    mut local: PairTerms,
    params: &ClippingParams,
    eps2: f64,
    rng: &mut R,
) -> LocalTriangleEstimate {
    let raw_sum = local.raw_sum();
    let width = local.neighbors.len();
    let out = clip_terms(&mut local.terms, &local.ends, width, params.b);
    LocalTriangleEstimate {
        user: local.user,
        pairs: local.terms.len(),
        raw_sum,
        clipped_sum: out.sum,
        noised: out.sum + laplace_sample(params.b / eps2, rng),
        clipped_terms: out.zeroed,
        clamped: out.clamped,
        bound: params.b,
        max_partial: out.max_partial,
    }
}

/// Per-user clipping parameters for triangle counting.
pub fn triangle_clipping_params(publication: &Publication, eps0: f64, beta: f64) -> Vec<ClippingParams> {
    let var = super::EdgeSource::variance_bound(publication);
    let m = publication.model();
    let collision = (m.s as f64 - 1.0) / ((m.m * m.s) as f64 - 1.0);
    publication
        .reports()
        .iter()
        .map(|r| ClippingParams::triangle(r, eps0, beta, var, collision))
        .collect()
}

/// Triangle counting with double clipping and Laplace noise.
pub fn triangles_clip(
    g: &Graph,
    publication: &Publication,
    eps0: f64,
    eps2: f64,
    beta: f64,
    streams: &Streams,
    ledger: &mut BudgetLedger,
) -> Result<(CountOutcome, Vec<LocalTriangleEstimate>)> {
    ledger.debit(Step::Counting, eps2)?;
    let params = triangle_clipping_params(publication, eps0, beta);
    let locals: Vec<LocalTriangleEstimate> = (0..g.n())
        .into_par_iter()
        .map(|i| {
            let mut rng = streams.rng(Role::FinalNoise, i as u64);
            clip_and_noise(triangle_raw_sum(g, i, publication), &params[i], eps2, &mut rng)
        })
        .collect();
    let outcome = CountOutcome {
        estimate: super::aggregate(&locals.iter().map(|l| l.noised).collect::<Vec<_>>()),
        raw: locals.iter().map(|l| l.raw_sum).sum(),
        users_clipped: locals.iter().filter(|l| l.clipped_terms > 0 || l.clamped).count(),
        terms_zeroed: locals.iter().map(|l| l.clipped_terms).sum(),
        clamped: locals.iter().filter(|l| l.clamped).count(),
        max_excess: locals.iter().map(|l| l.max_partial - l.bound).fold(f64::NEG_INFINITY, f64::max),
    };
    Ok((outcome, locals))
}
