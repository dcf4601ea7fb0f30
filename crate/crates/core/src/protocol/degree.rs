use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::graph::Graph;
use crate::privacy::laplace_sample;
use crate::rng::{Role, Streams};

/// A user's noisy degree message.
///
/// `d_tilde` is the noisy low degree. `d_tilde_high` is the noisy count of
/// higher-index neighbors; one edge changes only one of the two counts, so
/// releasing both with `Laplace(1/ε0)` noise costs `ε0` in total.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DegreeReport {
    pub user: usize,
    pub d_tilde: f64,
    pub d_tilde_high: f64,
}

impl DegreeReport {
    /// High-probability upper bound on the low degree, clamped at zero.
    pub fn low_bound(&self, eps0: f64, beta: f64) -> f64 {
        (self.d_tilde + (2.0 / beta).ln() / eps0).max(0.0)
    }

    /// High-probability upper bound on the full degree.
    pub fn full_bound(&self, eps0: f64, beta: f64) -> f64 {
        let slack = (4.0 / beta).ln() / eps0;
        (self.d_tilde + slack).max(0.0) + (self.d_tilde_high + slack).max(0.0)
    }
}

pub fn degree_sharing(g: &Graph, eps0: f64, streams: &Streams) -> Vec<DegreeReport> {
    (0..g.n())
        .into_par_iter()
        .map(|i| {
            let mut rng = streams.rng(Role::DegreeSharing, i as u64);
            let low = g.low_degree(i) as f64;
            let high = (g.degree(i) - g.low_degree(i)) as f64;
            DegreeReport {
                user: i,
                d_tilde: low + laplace_sample(1.0 / eps0, &mut rng),
                d_tilde_high: high + laplace_sample(1.0 / eps0, &mut rng),
            }
        })
        .collect()
}
