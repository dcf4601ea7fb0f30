//! Amplified budgets and the affine debiasing of published group bits.

use super::noise::rr_one_probability;
use crate::error::{Error, Result};

/// `ε' = ln(1 + s(e^{ε1} − 1))`: the per-bit budget that yields `ε1` after
/// sampling one of `s` group members.
pub fn amplified_epsilon(eps1: f64, s: usize) -> f64 {
    (s as f64 * eps1.exp_m1()).ln_1p()
}

/// Inverse of [`amplified_epsilon`].
pub fn deamplified_epsilon(eps_prime: f64, s: usize) -> f64 {
    (eps_prime.exp_m1() / s as f64).ln_1p()
}

/// Debiasing constants for one publisher.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct DebiasParams {
    pub omega: f64,
    pub sigma_tilde: f64,
    pub eps_prime: f64,
}

impl DebiasParams {
    /// Unbiased estimate of an edge bit from a (possibly subsampled) published bit.
    #[inline]
    pub fn estimate(&self, bit: bool, mu_c: f64) -> f64 {
        if bit {
            self.omega / mu_c - self.sigma_tilde
        } else {
            -self.sigma_tilde
        }
    }
}

/// The publication model for fixed `(m, s, ε')`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupRrModel {
    pub m: usize,
    pub s: usize,
    pub eps_prime: f64,
}

impl GroupRrModel {
    pub fn new(m: usize, s: usize, eps_prime: f64) -> Result<Self> {
        if m < 2 {
            return Err(Error::invalid(format!("group count m={m} must be at least 2")));
        }
        if s == 0 || !(eps_prime > 0.0) {
            return Err(Error::invalid(format!("need s ≥ 1 and ε' > 0 (s={s}, ε'={eps_prime})")));
        }
        Ok(GroupRrModel { m, s, eps_prime })
    }

    fn population(&self) -> f64 {
        (self.m * self.s) as f64
    }

    pub fn omega(&self) -> f64 {
        // (e^ε' + 1)/(e^ε' − 1) written as coth(ε'/2) to stay finite for huge ε'
        let ms = self.population();
        (ms - 1.0) / ((self.m as f64 - 1.0) * (0.5 * self.eps_prime).tanh())
    }

    /// `σ` evaluated at a degree `d` (true or noisy).
    pub fn sigma(&self, d: f64) -> f64 {
        let s = self.s as f64;
        let ms = self.population();
        ((s - 1.0) / (ms - s)) * d + (1.0 / self.eps_prime.exp_m1()) * ((ms - 1.0) / (self.m as f64 - 1.0))
    }

    /// Probability that the representative of the group holding a neighbor is an edge.
    pub fn p_present(&self, d: f64) -> f64 {
        let s = self.s as f64;
        ((s - 1.0) / s) * ((d - 1.0) / (self.population() - 1.0)) + 1.0 / s
    }

    /// Same for the group holding a non-neighbor.
    pub fn p_absent(&self, d: f64) -> f64 {
        let s = self.s as f64;
        ((s - 1.0) / s) * (d / (self.population() - 1.0))
    }

    fn publish(&self, p: f64) -> f64 {
        let keep = rr_one_probability(true, self.eps_prime);
        keep * p + (1.0 - p) * (1.0 - keep)
    }

    pub fn published_present(&self, d: f64) -> f64 {
        self.publish(self.p_present(d))
    }

    pub fn published_absent(&self, d: f64) -> f64 {
        self.publish(self.p_absent(d))
    }

    pub fn params(&self, d_tilde: f64) -> DebiasParams {
        DebiasParams {
            omega: self.omega(),
            sigma_tilde: self.sigma(d_tilde),
            eps_prime: self.eps_prime,
        }
    }
}

pub fn debias_params(d_tilde: f64, m: usize, s: usize, eps_prime: f64) -> Result<DebiasParams> {
    Ok(GroupRrModel::new(m, s, eps_prime)?.params(d_tilde))
}
