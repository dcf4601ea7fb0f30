use rayon::prelude::*;

use super::{clip_terms, CountOutcome, EdgeSource, PairTerms};
use crate::error::Result;
use crate::graph::Graph;
use crate::privacy::{laplace_sample, BudgetLedger, Step};
use crate::protocol::DegreeReport;
use crate::rng::{Role, Streams};

/// Per-pair 4-cycle terms for user `i`.
///
/// For neighbors `c < M` with `M > i`, the term is
/// `Σ_{j < M, j ∉ {i, c}} ã(M, j)·ã(j, c)`. The two factors come from
/// different publishers, so every product is unbiased. A cycle is picked up
/// by the two endpoints of the diagonal that avoids its largest node.
pub fn four_cycle_terms<E: EdgeSource + ?Sized>(g: &Graph, i: usize, source: &E) -> PairTerms {
    let neighbors = g.neighbors(i).to_vec();
    let first_high = neighbors.partition_point(|&v| v < i);
    let mut terms = Vec::new();
    let mut ends = Vec::new();
    if first_high < neighbors.len() && neighbors.len() >= 2 {
        let top = *neighbors.last().unwrap();
        // rows[x][j] = ã(j, neighbors[x]) for j < top, zero at j = i and j = neighbors[x]
        let rows: Vec<Vec<f64>> = neighbors
            .iter()
            .map(|&c| {
                (0..top)
                    .map(|j| if j == i || j == c { 0.0 } else { source.estimate_pair(i, j, c) })
                    .collect()
            })
            .collect();
        for b in first_high..neighbors.len() {
            let big = neighbors[b];
            let row_m = &rows[b][..big];
            for (a, row_c) in rows.iter().enumerate().take(b) {
                let dot: f64 = row_m.iter().zip(&row_c[..big]).map(|(x, y)| x * y).sum();
                terms.push(dot);
                ends.push((a as u32, b as u32));
            }
        }
    }
    PairTerms { user: i, neighbors, terms, ends }
}

/// User `i`'s unclipped local value.
pub fn four_cycle_estimate<E: EdgeSource + ?Sized>(g: &Graph, i: usize, source: &E) -> f64 {
    four_cycle_terms(g, i, source).raw_sum()
}

/// Per-neighbor contribution bound `d̂² + sqrt((2/β)·d̂·n·(V+1)²)`.
pub fn four_cycle_bound(d_hat: f64, n: usize, variance: f64, beta: f64) -> f64 {
    let v4 = (variance + 1.0).powi(2);
    d_hat * d_hat + ((2.0 / beta) * d_hat * n as f64 * v4).sqrt()
}

/// 4-cycle counting: clip per-pair terms, add `Laplace(b/ε2)` per user, and
/// halve the server total.
pub fn four_cycle_count<E: EdgeSource + ?Sized>(
    g: &Graph,
    source: &E,
    reports: &[DegreeReport],
    eps0: f64,
    eps2: f64,
    beta: f64,
    streams: &Streams,
    ledger: &mut BudgetLedger,
) -> Result<CountOutcome> {
    ledger.debit(Step::Counting, eps2)?;
    let variance = source.variance_bound();
    let n = g.n();
    let per_user: Vec<(f64, f64, usize, bool, f64)> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut local = four_cycle_terms(g, i, source);
            let raw = local.raw_sum();
            let bound = four_cycle_bound(reports[i].full_bound(eps0, beta), n, variance, beta);
            let width = local.neighbors.len();
            let out = clip_terms(&mut local.terms, &local.ends, width, bound);
            let mut rng = streams.rng(Role::FinalNoise, i as u64);
            let noised = out.sum + laplace_sample(bound / eps2, &mut rng);
            (raw, noised, out.zeroed, out.clamped, out.max_partial - bound)
        })
        .collect();
    Ok(CountOutcome {
        estimate: super::aggregate(&per_user.iter().map(|u| u.1).collect::<Vec<_>>()) / 2.0,
        raw: per_user.iter().map(|u| u.0).sum::<f64>() / 2.0,
        users_clipped: per_user.iter().filter(|u| u.2 > 0 || u.3).count(),
        terms_zeroed: per_user.iter().map(|u| u.2).sum(),
        clamped: per_user.iter().filter(|u| u.3).count(),
        max_excess: per_user.iter().map(|u| u.4).fold(f64::NEG_INFINITY, f64::max),
    })
}
