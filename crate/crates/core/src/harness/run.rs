use std::time::Instant;

use log::{info, warn};
use serde::{Deserialize, Serialize};

use super::config::{DerivedParameters, ExperimentConfig, GraphSource, Mechanism, Stat, WIKI_ENV};
use crate::baseline::{arr_publish, two_step_triangle};
use crate::error::{Error, Result};
use crate::estimators::{four_cycle_count, triangles_clip, triangles_smooth, CountOutcome};
use crate::graph::{
    count_four_cycles, count_triangles, erdos_renyi, generate_power_law_with_min_degree, induced_random_subgraph,
    load_edge_list, random_bipartite, Graph, IdBase,
};
use crate::privacy::{BudgetLedger, BudgetSplit, Step};
use crate::protocol::{degree_sharing, run_grouprr, CommLedger, GroupRrConfig};
use crate::rng::{Role, Streams};

/// Size of the synthetic stand-in for the Wikipedia vote graph.
pub const WIKI_NODES: usize = 7115;
const WIKI_EXPONENT: f64 = 2.1;
const WIKI_MIN_DEGREE: usize = 7;

pub const RELATIVE_ERROR_DEFINITION: &str = "|estimate - truth| / max(truth, 1)";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialResult {
    pub trial: u64,
    pub mechanism: Mechanism,
    pub stat: Stat,
    pub estimate: f64,
    /// Total before clipping and final noise.
    pub raw_estimate: f64,
    pub ground_truth: u64,
    pub relative_error: f64,
    pub mean_upload_bits: f64,
    pub mean_download_bits: f64,
    pub total_upload_bits: u64,
    pub total_download_bits: u64,
    pub users_clipped: usize,
    pub terms_zeroed: usize,
    pub clamped: usize,
    pub seed: u64,
    pub wall_ms: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub mechanism: Mechanism,
    pub stat: Stat,
    pub trials: usize,
    pub n: usize,
    pub edges: usize,
    pub ground_truth: u64,
    pub mean_estimate: f64,
    pub mean_relative_error: f64,
    pub median_relative_error: f64,
    pub l2_error: f64,
    pub mean_upload_bits: f64,
    pub mean_download_bits: f64,
    pub budget: BudgetSplit,
    pub parameters: DerivedParameters,
    pub relative_error_definition: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub config: ExperimentConfig,
    pub rows: Vec<TrialResult>,
    pub summary: Summary,
}

pub fn relative_error(estimate: f64, truth: u64) -> f64 {
    (estimate - truth as f64).abs() / (truth.max(1) as f64)
}

/// `sqrt(Σ_t (x̂_t − x)²)`.
pub fn l2_error(estimates: &[f64], truth: f64) -> f64 {
    estimates.iter().map(|e| (e - truth).powi(2)).sum::<f64>().sqrt()
}

pub fn median(values: &[f64]) -> f64 {
    if values.is_empty() {
        return f64::NAN;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let k = v.len() / 2;
    if v.len() % 2 == 1 {
        v[k]
    } else {
        0.5 * (v[k - 1] + v[k])
    }
}

/// Builds the graph named by `source`. Randomness comes from the master seed
/// only, so every trial sees the same graph.
pub fn build_graph(source: &GraphSource, seed: u64) -> Result<Graph> {
    let mut rng = Streams::new(seed).rng(Role::Graph, 0);
    Ok(match source {
        GraphSource::Path { path, one_based } => {
            load_edge_list(path, if *one_based { IdBase::One } else { IdBase::Zero })?.0
        }
        GraphSource::PowerLaw { n, exponent, min_degree } => {
            if *n < 2 {
                return Err(Error::invalid("power-law graphs need n ≥ 2"));
            }
            generate_power_law_with_min_degree(*n, *exponent, *min_degree, &mut rng)
        }
        GraphSource::ErdosRenyi { n, p } => erdos_renyi(*n, *p, &mut rng),
        GraphSource::Bipartite { left, right, p } => random_bipartite(*left, *right, *p, &mut rng),
        GraphSource::WikipediaLike => match std::env::var_os(WIKI_ENV) {
            Some(path) => load_edge_list(path, IdBase::Zero)?.0,
            None => generate_power_law_with_min_degree(WIKI_NODES, WIKI_EXPONENT, WIKI_MIN_DEGREE, &mut rng),
        },
    })
}

/// Graph after optional subsampling, plus its ground truth for `stat`.
pub fn prepare_graph(config: &ExperimentConfig) -> Result<(Graph, u64)> {
    let mut g = build_graph(&config.graph, config.seed)?;
    if let Some(k) = config.subsample {
        g = induced_random_subgraph(&g, k, &mut Streams::new(config.seed).rng(Role::Subsample, 0))?;
    }
    let truth = match config.stat {
        Stat::Triangles => count_triangles(&g),
        Stat::FourCycles => count_four_cycles(&g),
    };
    Ok((g, truth))
}

/// One trial of the configured mechanism on a prepared graph.
pub fn run_trial(
    g: &Graph,
    truth: u64,
    config: &ExperimentConfig,
    params: &DerivedParameters,
    trial: u64,
) -> Result<TrialResult> {
    let start = Instant::now();
    let split = config.budget()?;
    let streams = Streams::new(config.seed).trial(trial);
    let mut ledger = BudgetLedger::new(split);
    let (outcome, comm): (CountOutcome, CommLedger) = match config.mechanism {
        Mechanism::GroupRrClip | Mechanism::GroupRrSmooth => {
            let cfg = GroupRrConfig { s: params.s, mu_c: params.mu_c, split };
            let publication = run_grouprr(g, &cfg, &streams, &mut ledger)?;
            let comm = CommLedger::grouprr(&publication);
            let outcome = match (config.stat, config.mechanism) {
                (Stat::Triangles, Mechanism::GroupRrClip) => {
                    triangles_clip(g, &publication, split.eps0, split.eps2, config.beta, &streams, &mut ledger)?.0
                }
                (Stat::Triangles, _) => triangles_smooth(g, &publication, split.eps2, &streams, &mut ledger)?,
                (Stat::FourCycles, _) => four_cycle_count(
                    g,
                    &publication,
                    publication.reports(),
                    split.eps0,
                    split.eps2,
                    config.beta,
                    &streams,
                    &mut ledger,
                )?,
            };
            (outcome, comm)
        }
        Mechanism::ArrStyle | Mechanism::RrFull => {
            let mu = if config.mechanism == Mechanism::RrFull { 1.0 } else { params.mu };
            let reports = degree_sharing(g, split.eps0, &streams);
            ledger.debit(Step::DegreeSharing, split.eps0)?;
            let view = arr_publish(g, split.eps1, mu, &streams)?;
            ledger.debit(Step::EdgePublication, split.eps1)?;
            match config.stat {
                Stat::Triangles => {
                    let (out, _) = two_step_triangle(
                        g, &view, &reports, split.eps0, split.eps2, config.beta, &streams, &mut ledger,
                    )?;
                    (out, view.triangle_ledger())
                }
                Stat::FourCycles => {
                    let out = four_cycle_count(
                        g, &view, &reports, split.eps0, split.eps2, config.beta, &streams, &mut ledger,
                    )?;
                    (out, view.full_ledger())
                }
            }
        }
    };
    if !ledger.is_exhausted() {
        return Err(Error::invalid(format!("trial {trial} did not consume the full budget")));
    }
    if outcome.clamped > 0 {
        warn!("trial {trial}: clipping fell back to clamping for {} users", outcome.clamped);
    }
    Ok(TrialResult {
        trial,
        mechanism: config.mechanism,
        stat: config.stat,
        estimate: outcome.estimate,
        raw_estimate: outcome.raw,
        ground_truth: truth,
        relative_error: relative_error(outcome.estimate, truth),
        mean_upload_bits: comm.mean_upload(),
        mean_download_bits: comm.mean_download(),
        total_upload_bits: comm.total_upload(),
        total_download_bits: comm.total_download(),
        users_clipped: outcome.users_clipped,
        terms_zeroed: outcome.terms_zeroed,
        clamped: outcome.clamped,
        seed: streams.key(),
        wall_ms: config.timing.then(|| start.elapsed().as_secs_f64() * 1e3),
    })
}

pub fn summarize(g: &Graph, truth: u64, config: &ExperimentConfig, rows: &[TrialResult]) -> Result<Summary> {
    let estimates: Vec<f64> = rows.iter().map(|r| r.estimate).collect();
    let rel: Vec<f64> = rows.iter().map(|r| r.relative_error).collect();
    let k = rows.len().max(1) as f64;
    Ok(Summary {
        mechanism: config.mechanism,
        stat: config.stat,
        trials: rows.len(),
        n: g.n(),
        edges: g.edge_count(),
        ground_truth: truth,
        mean_estimate: estimates.iter().sum::<f64>() / k,
        mean_relative_error: rel.iter().sum::<f64>() / k,
        median_relative_error: median(&rel),
        l2_error: l2_error(&estimates, truth as f64),
        mean_upload_bits: rows.iter().map(|r| r.mean_upload_bits).sum::<f64>() / k,
        mean_download_bits: rows.iter().map(|r| r.mean_download_bits).sum::<f64>() / k,
        budget: config.budget()?,
        parameters: config.sampling.resolve()?,
        relative_error_definition: RELATIVE_ERROR_DEFINITION.to_string(),
    })
}

/// Trials on an already prepared graph.
pub fn run_trials_on(g: &Graph, truth: u64, config: &ExperimentConfig) -> Result<RunReport> {
    config.validate()?;
    let params = config.sampling.resolve()?;
    let body = || -> Result<RunReport> {
        let rows = (0..config.trials as u64)
            .map(|t| {
                let r = run_trial(g, truth, config, &params, t)?;
                info!("{} trial {t}: estimate {:.3} (truth {truth})", config.mechanism, r.estimate);
                Ok(r)
            })
            .collect::<Result<Vec<_>>>()?;
        let summary = summarize(g, truth, config, &rows)?;
        Ok(RunReport { config: config.clone(), rows, summary })
    };
    match config.threads {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .map_err(|e| Error::invalid(format!("thread pool: {e}")))?
            .install(body),
        None => body(),
    }
}

pub fn run_trials(config: &ExperimentConfig) -> Result<RunReport> {
    config.validate()?;
    let (g, truth) = prepare_graph(config)?;
    run_trials_on(&g, truth, config)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SweepAxis {
    MuStar,
    Epsilon,
    N,
    S,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub mechanism: Mechanism,
    pub axis: SweepAxis,
    pub value: f64,
    pub summary: Option<Summary>,
    pub error: Option<String>,
}

/// Runs every mechanism at every axis value. Failures are recorded per
/// point and the sweep continues.
pub fn sweep(template: &ExperimentConfig, axis: SweepAxis, values: &[f64], mechanisms: &[Mechanism]) -> Result<Vec<SweepRow>> {
    if values.is_empty() || mechanisms.is_empty() {
        return Err(Error::invalid("sweep needs at least one axis value and one mechanism"));
    }
    let mut rows = Vec::new();
    for &value in values {
        for &mechanism in mechanisms {
            let mut cfg = template.clone();
            cfg.mechanism = mechanism;
            match axis {
                SweepAxis::MuStar => cfg.sampling = super::Sampling::MuStar(value),
                SweepAxis::Epsilon => cfg.epsilon = value,
                SweepAxis::N => cfg.subsample = Some(value as usize),
                SweepAxis::S => {
                    cfg.sampling = match cfg.sampling {
                        super::Sampling::Explicit { mu_c, mu, .. } => {
                            super::Sampling::Explicit { s: value as usize, mu_c, mu }
                        }
                        super::Sampling::MuStar(_) => super::Sampling::Explicit { s: value as usize, mu_c: 1.0, mu: None },
                    }
                }
            }
            let result = run_trials(&cfg);
            if let Err(e) = &result {
                warn!("sweep point {axis:?}={value} ({mechanism}) failed: {e}");
            }
            let (summary, error) = match result {
                Ok(r) => (Some(r.summary), None),
                Err(e) => (None, Some(e.to_string())),
            };
            rows.push(SweepRow { mechanism, axis, value, summary, error });
        }
    }
    Ok(rows)
}
