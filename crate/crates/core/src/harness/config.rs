use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::privacy::BudgetSplit;

/// Environment variable naming a real Wikipedia vote edge list.
pub const WIKI_ENV: &str = "GROUPRR_WIKI_PATH";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum GraphSource {
    Path { path: PathBuf, one_based: bool },
    PowerLaw { n: usize, exponent: f64, min_degree: usize },
    ErdosRenyi { n: usize, p: f64 },
    Bipartite { left: usize, right: usize, p: f64 },
    /// The Wikipedia vote graph if `GROUPRR_WIKI_PATH` points at it,
    /// otherwise a heavy-tailed synthetic graph of the same size.
    WikipediaLike,
}

impl FromStr for GraphSource {
    type Err = Error;

    /// `powerlaw:N[:EXP[:MINDEG]]`, `er:N:P`, `bipartite:L:R:P` or `wiki`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || Error::invalid(format!("unrecognized synthetic graph spec {s:?}"));
        let num = |k: usize| parts.get(k).ok_or_else(bad)?.parse::<f64>().map_err(|_| bad());
        let int = |k: usize| parts.get(k).ok_or_else(bad)?.parse::<usize>().map_err(|_| bad());
        match parts[0] {
            "powerlaw" => Ok(GraphSource::PowerLaw {
                n: int(1)?,
                exponent: if parts.len() > 2 { num(2)? } else { 2.0 },
                min_degree: if parts.len() > 3 { int(3)? } else { 1 },
            }),
            "er" if parts.len() == 3 => Ok(GraphSource::ErdosRenyi { n: int(1)?, p: num(2)? }),
            "bipartite" if parts.len() == 4 => Ok(GraphSource::Bipartite { left: int(1)?, right: int(2)?, p: num(3)? }),
            "wiki" if parts.len() == 1 => Ok(GraphSource::WikipediaLike),
            _ => Err(bad()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Stat {
    Triangles,
    FourCycles,
}

impl FromStr for Stat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "triangles" => Ok(Stat::Triangles),
            "c4" | "four_cycles" | "four-cycles" => Ok(Stat::FourCycles),
            _ => Err(Error::invalid(format!("unknown statistic {s:?}"))),
        }
    }
}

impl fmt::Display for Stat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stat::Triangles => "triangles",
            Stat::FourCycles => "c4",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mechanism {
    GroupRrClip,
    GroupRrSmooth,
    ArrStyle,
    RrFull,
}

impl FromStr for Mechanism {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.replace('_', "-").as_str() {
            "grouprr-clip" => Ok(Mechanism::GroupRrClip),
            "grouprr-smooth" => Ok(Mechanism::GroupRrSmooth),
            "arr" | "arr-style" => Ok(Mechanism::ArrStyle),
            "rr" | "rr-full" => Ok(Mechanism::RrFull),
            _ => Err(Error::invalid(format!("unknown mechanism {s:?}"))),
        }
    }
}

impl fmt::Display for Mechanism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mechanism::GroupRrClip => "grouprr-clip",
            Mechanism::GroupRrSmooth => "grouprr-smooth",
            Mechanism::ArrStyle => "arr-style",
            Mechanism::RrFull => "rr-full",
        })
    }
}

/// Download-reduction settings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Sampling {
    /// Target reduction factor; derives `s`, `μ_c` and `μ`.
    MuStar(f64),
    /// Explicit GroupRR parameters. `mu` is the ARR-style retention rate and
    /// defaults to `sqrt(μ_c/s²)`.
    Explicit { s: usize, mu_c: f64, mu: Option<f64> },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DerivedParameters {
    pub s: usize,
    pub mu_c: f64,
    pub mu: f64,
    /// `μ_c/s²` after rounding `s`.
    pub mu_star_eff: f64,
}

/// `s = round((1/μ*)^{1/3})`, `μ_c = (μ*)^{1/3}`, `μ = sqrt(μ*)`.
pub fn derive_parameters(mu_star: f64) -> Result<DerivedParameters> {
    if !(mu_star > 0.0 && mu_star <= 1.0) {
        return Err(Error::invalid(format!("μ* must lie in (0, 1], got {mu_star}")));
    }
    let s = ((1.0 / mu_star).cbrt().round() as usize).max(1);
    let mu_c = mu_star.cbrt().clamp(f64::MIN_POSITIVE, 1.0);
    Ok(DerivedParameters { s, mu_c, mu: mu_star.sqrt(), mu_star_eff: mu_c / (s * s) as f64 })
}

impl Sampling {
    pub fn resolve(&self) -> Result<DerivedParameters> {
        match *self {
            Sampling::MuStar(m) => derive_parameters(m),
            Sampling::Explicit { s, mu_c, mu } => {
                if s == 0 || !(mu_c > 0.0 && mu_c <= 1.0) {
                    return Err(Error::invalid(format!("need s ≥ 1 and μ_c in (0, 1], got s={s}, μ_c={mu_c}")));
                }
                let mu_star_eff = mu_c / (s * s) as f64;
                let mu = mu.unwrap_or(mu_star_eff.sqrt());
                if !(mu > 0.0 && mu <= 1.0) {
                    return Err(Error::invalid(format!("μ must lie in (0, 1], got {mu}")));
                }
                Ok(DerivedParameters { s, mu_c, mu, mu_star_eff })
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub graph: GraphSource,
    pub stat: Stat,
    pub mechanism: Mechanism,
    pub epsilon: f64,
    /// Relative weights of `(ε0, ε1, ε2)`; defaults to `0.1/0.45/0.45`.
    pub split: Option<[f64; 3]>,
    pub sampling: Sampling,
    pub trials: usize,
    pub seed: u64,
    pub subsample: Option<usize>,
    pub beta: f64,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
    /// Adds a wall-time column to per-trial output.
    pub timing: bool,
}

impl ExperimentConfig {
    pub fn new(graph: GraphSource, stat: Stat, mechanism: Mechanism) -> Self {
        ExperimentConfig {
            graph,
            stat,
            mechanism,
            epsilon: 1.0,
            split: None,
            sampling: Sampling::MuStar(1.0),
            trials: 10,
            seed: 0,
            subsample: None,
            beta: 1e-3,
            threads: None,
            timing: false,
        }
    }

    pub fn budget(&self) -> Result<BudgetSplit> {
        match self.split {
            Some(w) => BudgetSplit::from_fractions(self.epsilon, w),
            None => BudgetSplit::from_total(self.epsilon),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::invalid("trials must be at least 1"));
        }
        if !(self.beta > 0.0 && self.beta < 1.0) {
            return Err(Error::invalid(format!("β must lie in (0, 1), got {}", self.beta)));
        }
        if self.mechanism == Mechanism::GroupRrSmooth && self.stat == Stat::FourCycles {
            return Err(Error::invalid("smooth sensitivity is only implemented for triangles"));
        }
        if self.threads == Some(0) {
            return Err(Error::invalid("threads must be at least 1"));
        }
        self.budget()?;
        self.sampling.resolve()?;
        Ok(())
    }
}
