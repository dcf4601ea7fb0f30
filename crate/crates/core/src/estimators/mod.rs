//! Per-user subgraph estimates and the final noise mechanisms.

mod clip;
mod four_cycle;
mod smooth;
mod triangle;

pub use clip::{clip_terms, ClipOutcome, ClippingParams};
pub use four_cycle::{four_cycle_bound, four_cycle_count, four_cycle_estimate, four_cycle_terms};
pub use smooth::{
    local_sensitivity, local_sensitivity_of, smooth_sensitivity, smooth_sensitivity_scan, smooth_sensitivity_noise, triangles_smooth,
    SmoothSensitivity,
};
pub use triangle::{clip_and_noise, triangle_clipping_params, triangle_raw_sum, triangles_clip, LocalTriangleEstimate, PairTerms};

use serde::{Deserialize, Serialize};

use crate::protocol::Publication;

/// Anything that can hand a viewer an unbiased estimate of an edge bit.
pub trait EdgeSource: Sync {
    fn n(&self) -> usize;
    /// Estimate of edge `{u, v}` as seen by `viewer`.
    fn estimate_pair(&self, viewer: usize, u: usize, v: usize) -> f64;
    /// Public upper bound on the variance of one estimate.
    fn variance_bound(&self) -> f64;
}

impl EdgeSource for Publication {
    fn n(&self) -> usize {
        Publication::n(self)
    }

    fn estimate_pair(&self, viewer: usize, u: usize, v: usize) -> f64 {
        Publication::estimate_pair(self, viewer, u, v)
    }

    fn variance_bound(&self) -> f64 {
        self.model().omega() * (1.0 + self.max_sigma_plus()) / self.mu_c()
    }
}

/// Result of a full counting pass.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountOutcome {
    /// Published total after final noise.
    pub estimate: f64,
    /// Total before clipping and noise.
    pub raw: f64,
    /// Users whose contribution was altered by clipping.
    pub users_clipped: usize,
    pub terms_zeroed: usize,
    /// Users where clipping could not reach the bound and fell back to clamping.
    pub clamped: usize,
    /// Largest `|partial| − bound` seen after clipping (≤ 0 when the contract holds).
    pub max_excess: f64,
}

/// Server-side sum of per-user values, in index order.
pub fn aggregate(values: &[f64]) -> f64 {
    values.iter().sum()
}
