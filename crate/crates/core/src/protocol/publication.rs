use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::privacy::{amplified_epsilon, BudgetLedger, BudgetSplit, DebiasParams, GroupRrModel, HashScheme, Step};
use crate::rng::{Role, Streams};

use super::{degree_sharing, group_rr_step, Css, CssView, DegreeReport, ObfuscatedList};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupRrConfig {
    pub s: usize,
    pub mu_c: f64,
    pub split: BudgetSplit,
}

/// Everything the server broadcasts after the publication steps, with fast
/// lookups for simulated viewers.
#[derive(Debug, Clone)]
pub struct Publication {
    scheme: HashScheme,
    model: GroupRrModel,
    reports: Vec<DegreeReport>,
    lists: Vec<ObfuscatedList>,
    params: Vec<DebiasParams>,
    css: Css,
    words: usize,
    bits: Vec<u64>,
}

/// Degree sharing, group randomized response and central server sampling.
pub fn run_grouprr(g: &Graph, cfg: &GroupRrConfig, streams: &Streams, ledger: &mut BudgetLedger) -> Result<Publication> {
    let n = g.n();
    if n < 2 {
        return Err(Error::invalid(format!("need at least 2 users, got {n}")));
    }
    let scheme = HashScheme::new(n, cfg.s, &mut streams.rng(Role::HashCoefficients, 0))?;
    let model = GroupRrModel::new(scheme.m(), cfg.s, amplified_epsilon(cfg.split.eps1, cfg.s))?;
    let css = Css::new(cfg.mu_c, streams)?;
    let reports = degree_sharing(g, cfg.split.eps0, streams);
    ledger.debit(Step::DegreeSharing, cfg.split.eps0)?;
    let lists = group_rr_step(g, &scheme, cfg.split.eps1, streams);
    ledger.debit(Step::EdgePublication, cfg.split.eps1)?;
    Publication::new(scheme, model, reports, lists, css)
}

impl Publication {
    pub fn new(
        scheme: HashScheme,
        model: GroupRrModel,
        reports: Vec<DegreeReport>,
        lists: Vec<ObfuscatedList>,
        css: Css,
    ) -> Result<Self> {
        if reports.len() != lists.len() || model.m != scheme.m() || model.s != scheme.s() {
            return Err(Error::invalid("publication parts disagree on n, m or s"));
        }
        let words = scheme.m().div_ceil(64);
        let mut bits = vec![0u64; words * lists.len()];
        for (j, l) in lists.iter().enumerate() {
            for &t in &l.one_bins {
                bits[j * words + t as usize / 64] |= 1 << (t % 64);
            }
        }
        let params = reports.iter().map(|r| model.params(r.d_tilde)).collect();
        Ok(Publication { scheme, model, reports, lists, params, css, words, bits })
    }

    pub fn n(&self) -> usize {
        self.lists.len()
    }
    pub fn scheme(&self) -> &HashScheme {
        &self.scheme
    }
    pub fn model(&self) -> &GroupRrModel {
        &self.model
    }
    pub fn reports(&self) -> &[DegreeReport] {
        &self.reports
    }
    pub fn lists(&self) -> &[ObfuscatedList] {
        &self.lists
    }
    pub fn params(&self, publisher: usize) -> &DebiasParams {
        &self.params[publisher]
    }
    pub fn css(&self) -> &Css {
        &self.css
    }
    pub fn mu_c(&self) -> f64 {
        self.css.mu_c()
    }

    /// `ω / μ_c`, the value of a retained one before subtracting `σ̃`.
    pub fn omega_eff(&self) -> f64 {
        self.model.omega() / self.mu_c()
    }

    /// Largest public `σ̃`, clamped below at zero.
    pub fn max_sigma_plus(&self) -> f64 {
        self.params.iter().map(|p| p.sigma_tilde).fold(0.0, f64::max)
    }

    /// Largest magnitude any single edge estimate can take.
    pub fn max_abs_estimate(&self) -> f64 {
        let w = self.omega_eff();
        self.params
            .iter()
            .map(|p| (w - p.sigma_tilde).abs().max(p.sigma_tilde.abs()))
            .fold(w, f64::max)
    }

    #[inline]
    pub fn published(&self, publisher: usize, bin: usize) -> bool {
        self.bits[publisher * self.words + bin / 64] >> (bin % 64) & 1 == 1
    }

    #[inline]
    pub fn visible(&self, viewer: usize, publisher: usize, bin: usize) -> bool {
        self.published(publisher, bin) && self.css.retained(viewer, publisher, bin)
    }

    /// Estimate of `a_{publisher,key}` as seen by `viewer`; requires `key < publisher`.
    #[inline]
    pub fn estimate(&self, viewer: usize, publisher: usize, key: usize) -> f64 {
        debug_assert!(key < publisher);
        let bin = self.scheme.bin(publisher, key);
        self.params[publisher].estimate(self.visible(viewer, publisher, bin), self.mu_c())
    }

    /// Estimate of edge `{u, v}` with the publisher taken as the larger index.
    #[inline]
    pub fn estimate_pair(&self, viewer: usize, u: usize, v: usize) -> f64 {
        if u > v {
            self.estimate(viewer, u, v)
        } else {
            self.estimate(viewer, v, u)
        }
    }

    pub fn edge_estimate(&self, viewer: usize, publisher: usize, key: usize) -> Result<f64> {
        if key >= publisher {
            return Err(Error::EdgeDirection { publisher, key });
        }
        Ok(self.estimate(viewer, publisher, key))
    }
}

/// Edge estimate from a materialized view.
pub fn edge_estimate(
    view: &CssView,
    scheme: &HashScheme,
    publisher: usize,
    key: usize,
    params: &DebiasParams,
    mu_c: f64,
) -> Result<f64> {
    if key >= publisher {
        return Err(Error::EdgeDirection { publisher, key });
    }
    let bin = scheme.bin(publisher, key);
    Ok(params.estimate(view.contains(publisher, bin), mu_c))
}
