use crate::error::{Error, Result};
use crate::rng::{KeyedUniform, Role, Streams};

use super::ObfuscatedList;

/// Central server sampling: the server keeps each published one-bin for
/// viewer `i` independently with probability `μ_c`.
///
/// Retention is a keyed draw on `(viewer, publisher, bin)`, so views never
/// have to be stored and any schedule yields the same answer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Css {
    mu_c: f64,
    draws: KeyedUniform,
}

impl Css {
    pub fn new(mu_c: f64, streams: &Streams) -> Result<Self> {
        if !(mu_c > 0.0 && mu_c <= 1.0) {
            return Err(Error::invalid(format!("μ_c must lie in (0, 1], got {mu_c}")));
        }
        Ok(Css { mu_c, draws: streams.keyed(Role::CentralSampling) })
    }

    /// No subsampling.
    pub fn disabled(streams: &Streams) -> Self {
        Css { mu_c: 1.0, draws: streams.keyed(Role::CentralSampling) }
    }

    pub fn mu_c(&self) -> f64 {
        self.mu_c
    }

    #[inline]
    pub fn retained(&self, viewer: usize, publisher: usize, bin: usize) -> bool {
        self.mu_c >= 1.0 || self.draws.uniform(viewer as u64, publisher as u64, bin as u64) < self.mu_c
    }

    pub fn view(&self, viewer: usize, lists: &[ObfuscatedList]) -> CssView {
        CssView {
            viewer,
            lists: lists
                .iter()
                .map(|l| {
                    l.one_bins
                        .iter()
                        .copied()
                        .filter(|&t| self.retained(viewer, l.user, t as usize))
                        .collect()
                })
                .collect(),
        }
    }

    /// Number of one-bins viewer `i` receives from `list`.
    pub fn retained_count(&self, viewer: usize, list: &ObfuscatedList) -> usize {
        if self.mu_c >= 1.0 {
            return list.len();
        }
        list.one_bins.iter().filter(|&&t| self.retained(viewer, list.user, t as usize)).count()
    }
}

/// What one viewer receives: a thinned copy of every publisher's list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CssView {
    pub viewer: usize,
    pub lists: Vec<Vec<u32>>,
}

impl CssView {
    pub fn contains(&self, publisher: usize, bin: usize) -> bool {
        self.lists[publisher].binary_search(&(bin as u32)).is_ok()
    }
}

/// Materializes every viewer's view. Quadratic in `n`; meant for small graphs.
pub fn central_server_sampling(lists: &[ObfuscatedList], mu_c: f64, n: usize, streams: &Streams) -> Result<Vec<CssView>> {
    let css = Css::new(mu_c, streams)?;
    Ok((0..n).map(|i| css.view(i, lists)).collect())
}
