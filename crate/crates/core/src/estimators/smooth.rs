use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{triangle_raw_sum, CountOutcome};
use crate::error::Result;
use crate::graph::Graph;
use crate::privacy::{BudgetLedger, Step, ZGamma4};
use crate::protocol::Publication;
use crate::rng::{Role, Streams};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SmoothSensitivity {
    pub ub_ls: f64,
    pub beta_smooth: f64,
    pub s_star: f64,
    pub k_star: u64,
    pub gamma: u32,
}

/// `max_k e^{−βk}(ub + k·step)` over integers `k ≥ 0`, via the continuous
/// maximizer `1/β − ub/step`.
pub fn smooth_sensitivity(ub: f64, step: f64, beta: f64) -> SmoothSensitivity {
    let value = |k: f64| (-beta * k).exp() * (ub + k * step);
    let mut best = (ub, 0u64);
    if step > 0.0 {
        let k = (1.0 / beta - ub / step).max(0.0);
        for cand in [k.floor(), k.ceil()] {
            let v = value(cand);
            if v > best.0 {
                best = (v, cand as u64);
            }
        }
    }
    SmoothSensitivity { ub_ls: ub, beta_smooth: beta, s_star: best.0, k_star: best.1, gamma: 4 }
}

/// Brute-force integer scan over `k ∈ [0, kmax]`.
pub fn smooth_sensitivity_scan(ub: f64, step: f64, beta: f64, kmax: u64) -> f64 {
    (0..=kmax).map(|k| (-beta * k as f64).exp() * (ub + k as f64 * step)).fold(f64::NEG_INFINITY, f64::max)
}

/// Exact local sensitivity of user `i`'s triangle sum: the largest change
/// from toggling one lower-index neighbor `j`.
pub fn local_sensitivity(g: &Graph, i: usize, publication: &Publication) -> f64 {
    local_sensitivity_of(i, g.low_neighbors(i), publication)
}

/// As [`local_sensitivity`] for an arbitrary set of lower-index neighbors.
pub fn local_sensitivity_of(i: usize, low: &[usize], publication: &Publication) -> f64 {
    (0..i)
        .map(|j| {
            low.iter()
                .filter(|&&k| k != j)
                .map(|&k| publication.estimate_pair(i, j, k))
                .sum::<f64>()
                .abs()
        })
        .fold(0.0, f64::max)
}

/// User `i`'s raw sum plus `Z_4` noise scaled by the smooth sensitivity.
pub fn smooth_sensitivity_noise<R: Rng + ?Sized>(
    g: &Graph,
    i: usize,
    publication: &Publication,
    eps2: f64,
    rng: &mut R,
) -> (f64, f64, SmoothSensitivity) {
    let raw = triangle_raw_sum(g, i, publication).raw_sum();
    let beta = eps2 / 6.0;
    let ss = smooth_sensitivity(local_sensitivity(g, i, publication), publication.max_abs_estimate(), beta);
    let noised = raw + (6.0 / eps2) * ss.s_star * ZGamma4::shared().sample(rng);
    (raw, noised, ss)
}

/// Triangle counting with smooth-sensitivity noise.
pub fn triangles_smooth(
    g: &Graph,
    publication: &Publication,
    eps2: f64,
    streams: &Streams,
    ledger: &mut BudgetLedger,
) -> Result<CountOutcome> {
    ledger.debit(Step::Counting, eps2)?;
    let per_user: Vec<(f64, f64, SmoothSensitivity)> = (0..g.n())
        .into_par_iter()
        .map(|i| smooth_sensitivity_noise(g, i, publication, eps2, &mut streams.rng(Role::FinalNoise, i as u64)))
        .collect();
    Ok(CountOutcome {
        estimate: super::aggregate(&per_user.iter().map(|u| u.1).collect::<Vec<_>>()),
        raw: per_user.iter().map(|u| u.0).sum(),
        users_clipped: 0,
        terms_zeroed: 0,
        clamped: 0,
        max_excess: f64::NEG_INFINITY,
    })
}
