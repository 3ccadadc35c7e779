use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::distribution::{empirical_density, Histogram, DEFAULT_BINS};
use crate::error::{Error, Result};
use crate::numerics::{chisq_quantile, RngStream};
use crate::simulate::{generate, GeneratorConfig, ModelSpec, DEFAULT_BURN_IN};
use crate::stattest::{validate_lags, TestConfig, MIN_SERIES_LEN};

/// A Monte Carlo rejection study. Replication i draws its innovations from
/// stream i of `master_seed`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McConfig {
    pub model: ModelSpec,
    pub len: usize,
    /// Lags, kernel, bandwidth, ridge and correction of the test.
    pub test: TestConfig,
    pub level: f64,
    pub replications: usize,
    pub master_seed: u64,
    pub burn_in: usize,
    pub bins: usize,
}

impl McConfig {
    pub fn new(model: ModelSpec, len: usize, test: TestConfig, replications: usize) -> Self {
        Self {
            model,
            len,
            test,
            level: 0.05,
            replications,
            master_seed: 0,
            burn_in: DEFAULT_BURN_IN,
            bins: DEFAULT_BINS,
        }
    }

    pub fn with_seed(mut self, master_seed: u64) -> Self {
        self.master_seed = master_seed;
        self
    }

    pub fn with_level(mut self, level: f64) -> Self {
        self.level = level;
        self
    }

    pub fn with_burn_in(mut self, burn_in: usize) -> Self {
        self.burn_in = burn_in;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.replications == 0 {
            return Err(Error::InvalidInput("need at least one replication".into()));
        }
        if !(self.level > 0.0 && self.level < 1.0) {
            return Err(Error::InvalidInput(format!(
                "significance level must lie in (0, 1), got {}",
                self.level
            )));
        }
        if self.len < MIN_SERIES_LEN {
            return Err(Error::InvalidInput(format!(
                "series length {} is below the minimum of {MIN_SERIES_LEN}",
                self.len
            )));
        }
        if self.bins < 2 {
            return Err(Error::InvalidInput(format!("need at least 2 bins, got {}", self.bins)));
        }
        self.model.validate(false)?;
        self.test.validate()?;
        validate_lags(&self.test.lags, self.len)
    }

    /// The series of replication `index`.
    pub fn series(&self, index: u64) -> Result<Vec<f64>> {
        let gen = GeneratorConfig::new(self.len, RngStream::new(self.master_seed, index))
            .with_burn_in(self.burn_in);
        generate(&self.model, &gen)
    }

    /// Runs `f` on every replication in parallel, keeping replication order.
    fn replicate<T, F>(&self, f: F) -> Result<Vec<T>>
    where
        T: Send,
        F: Fn(&[f64]) -> Result<T> + Sync,
    {
        (0..self.replications as u64)
            .into_par_iter()
            .map(|i| {
                self.series(i)
                    .and_then(|x| f(&x))
                    .map_err(|e| Error::Replication {
                        index: i,
                        source: Box::new(e),
                    })
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McReport {
    pub rejection_rate: f64,
    pub rejections: usize,
    pub critical_value: f64,
    /// 𝒯_m of each replication, by replication index.
    pub statistics: Vec<f64>,
    pub histogram: Histogram,
    pub config: McConfig,
}

/// Fraction of replications whose 𝒯_m exceeds the χ²_{2m}(1 − α) quantile.
pub fn rejection_rate(config: &McConfig) -> Result<McReport> {
    config.validate()?;
    let critical_value = chisq_quantile(1.0 - config.level, config.test.dof())?;
    let statistics = config.replicate(|x| Ok(config.test.covariances(x)?.0.statistic()))?;
    let rejections = statistics.iter().filter(|&&s| s > critical_value).count();
    let histogram = empirical_density(&statistics, config.bins)?;
    Ok(McReport {
        rejection_rate: rejections as f64 / config.replications as f64,
        rejections,
        critical_value,
        statistics,
        histogram,
        config: config.clone(),
    })
}

/// Per-lag rejection rates of the single-lag test 𝒯₁.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub lags: Vec<usize>,
    pub rejection_rates: Vec<f64>,
    pub critical_value: f64,
    pub config: McConfig,
}

/// For each lag r in `config.test.lags`, the rejection rate of 𝒯₁ at lag r.
/// All lags share one spectral estimate per replication.
pub fn lag_scan(config: &McConfig) -> Result<ScanReport> {
    config.validate()?;
    let lags = config.test.lags.clone();
    let critical_value = chisq_quantile(1.0 - config.level, 2)?;
    let per_rep = config.replicate(|x| {
        let (cov, _) = config.test.covariances_for(x, &lags)?;
        Ok(cov
            .contributions()
            .iter()
            .map(|&s| s > critical_value)
            .collect::<Vec<bool>>())
    })?;
    let n = config.replications as f64;
    let rejection_rates = (0..lags.len())
        .map(|j| per_rep.iter().filter(|row| row[j]).count() as f64 / n)
        .collect();
    Ok(ScanReport {
        lags,
        rejection_rates,
        critical_value,
        config: config.clone(),
    })
}
