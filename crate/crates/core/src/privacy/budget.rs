//! Privacy budget split and per-trial accounting.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BudgetSplit {
    pub eps0: f64,
    pub eps1: f64,
    pub eps2: f64,
}

impl BudgetSplit {
    pub fn new(eps0: f64, eps1: f64, eps2: f64) -> Result<Self> {
        for (name, v) in [("eps0", eps0), ("eps1", eps1), ("eps2", eps2)] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::invalid(format!("{name} must be positive and finite, got {v}")));
            }
        }
        Ok(BudgetSplit { eps0, eps1, eps2 })
    }

    /// Default split `0.1ε / 0.45ε / 0.45ε`.
    pub fn from_total(eps: f64) -> Result<Self> {
        Self::from_fractions(eps, [0.1, 0.45, 0.45])
    }

    /// Splits `eps` in proportion to `weights` (normalized to sum to one).
    pub fn from_fractions(eps: f64, weights: [f64; 3]) -> Result<Self> {
        if !(eps > 0.0) || !eps.is_finite() {
            return Err(Error::invalid(format!("total epsilon must be positive and finite, got {eps}")));
        }
        let total: f64 = weights.iter().sum();
        if weights.iter().any(|w| !(*w > 0.0)) || !total.is_finite() {
            return Err(Error::invalid(format!("budget weights must be positive, got {weights:?}")));
        }
        Self::new(eps * weights[0] / total, eps * weights[1] / total, eps * weights[2] / total)
    }

    pub fn total(&self) -> f64 {
        self.eps0 + self.eps1 + self.eps2
    }

    pub fn get(&self, step: Step) -> f64 {
        match step {
            Step::DegreeSharing => self.eps0,
            Step::EdgePublication => self.eps1,
            Step::Counting => self.eps2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Step {
    DegreeSharing,
    EdgePublication,
    Counting,
}

/// Tracks what each mechanism step has consumed within one trial.
#[derive(Debug, Clone, PartialEq)]
pub struct BudgetLedger {
    split: BudgetSplit,
    spent: [f64; 3],
}

const TOLERANCE: f64 = 1e-12;

impl BudgetLedger {
    pub fn new(split: BudgetSplit) -> Self {
        BudgetLedger { split, spent: [0.0; 3] }
    }

    fn slot(step: Step) -> usize {
        match step {
            Step::DegreeSharing => 0,
            Step::EdgePublication => 1,
            Step::Counting => 2,
        }
    }

    /// Records `eps` spent on `step`; rejects spending beyond the step's allocation.
    pub fn debit(&mut self, step: Step, eps: f64) -> Result<()> {
        let k = Self::slot(step);
        let after = self.spent[k] + eps;
        if !(eps >= 0.0) || after > self.split.get(step) * (1.0 + TOLERANCE) {
            return Err(Error::invalid(format!(
                "budget overrun on {step:?}: {after} > {}",
                self.split.get(step)
            )));
        }
        self.spent[k] = after;
        Ok(())
    }

    pub fn spent(&self, step: Step) -> f64 {
        self.spent[Self::slot(step)]
    }

    pub fn total_spent(&self) -> f64 {
        self.spent.iter().sum()
    }

    /// True once every step has used exactly its allocation.
    pub fn is_exhausted(&self) -> bool {
        [Step::DegreeSharing, Step::EdgePublication, Step::Counting]
            .into_iter()
            .all(|s| (self.spent(s) - self.split.get(s)).abs() <= TOLERANCE * self.split.get(s))
    }
}
