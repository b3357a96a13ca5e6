//! Sweep configuration and the catalogue of verifiable inequalities.

use anyhow::{bail, Result};

/// Which verification sweep to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Which {
    /// Divergence vs observable-statistics bound on random state triples.
    Theorem,
    /// Trace-norm bound through the sign operator, both stages.
    Holevo,
    /// Inverted uncertainty relation on random state triples.
    Inverted,
    /// Classical uncertainty relation on random distributions.
    Classical,
    /// Exchange-fluctuation relation on random trajectory instances.
    Exchange,
    /// Divergence identity of the classical embedding.
    NsIdentity,
    /// Classical divergence bound plus its proof identities.
    Lemma1,
    /// Mean-shift lower bound on the triangular discrimination.
    Lemma2,
}

impl Which {
    pub fn token(&self) -> &'static str {
        match self {
            Which::Theorem => "theorem",
            Which::Holevo => "holevo",
            Which::Inverted => "inverted",
            Which::Classical => "classical",
            Which::Exchange => "exchange",
            Which::NsIdentity => "ns-identity",
            Which::Lemma1 => "lemma1",
            Which::Lemma2 => "lemma2",
        }
    }
}

/// Parameters shared by every sweep. `dims` doubles as the list of
/// distribution lengths for the classical sweeps.
#[derive(Debug, Clone, serde::Serialize)]
pub struct SweepConfig {
    pub dims: Vec<usize>,
    pub alphas: Vec<f64>,
    pub trials: usize,
    pub seed: u64,
    pub tolerance: f64,
    pub jobs: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            dims: vec![2, 3, 4, 5, 6],
            alphas: petz::DEFAULT_ALPHA_GRID.to_vec(),
            trials: 1000,
            seed: 0,
            tolerance: 1e-9,
            jobs: 1,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            bail!("trials must be at least 1");
        }
        if self.dims.is_empty() || self.dims.iter().any(|&d| d < 2) {
            bail!("dims must be a non-empty list of integers >= 2");
        }
        if self.alphas.is_empty() || self.alphas.iter().any(|&a| !(a > 0.0) || !a.is_finite()) {
            bail!("alphas must be a non-empty list of positive reals");
        }
        if !(self.tolerance > 0.0) {
            bail!("tolerance must be positive");
        }
        if self.jobs == 0 {
            bail!("jobs must be at least 1");
        }
        Ok(())
    }
}
