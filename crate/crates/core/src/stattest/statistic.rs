use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::correction::{corrections, CorrectionSpec};
use super::covariance::{lag_covariance, standardize, validate_lags, DftCovariances};
use crate::error::{Error, Result};
use crate::numerics::{chisq_quantile, chisq_sf, dft_canonical};
use crate::spectral::{
    periodogram_from_dft, smooth_spectral, BandwidthWarning, KernelKind, KernelSpec,
    SpectralEstimate, DEFAULT_RIDGE_FACTOR,
};

/// Shortest series the test accepts.
pub const MIN_SERIES_LEN: usize = 32;

pub const DEFAULT_LEVELS: [f64; 3] = [0.01, 0.05, 0.10];

/// Everything the test needs besides the data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestConfig {
    pub lags: Vec<usize>,
    pub kernel: KernelKind,
    /// `None` selects b = T^{-1/3} from the length of whatever is tested.
    pub bandwidth: Option<f64>,
    pub ridge_factor: f64,
    pub correction: CorrectionSpec,
    pub demean: bool,
    pub levels: Vec<f64>,
}

impl Default for TestConfig {
    fn default() -> Self {
        Self::consecutive(4)
    }
}

impl TestConfig {
    /// Lags r = 1..m with all other settings at their defaults.
    pub fn consecutive(m: usize) -> Self {
        Self {
            lags: (1..=m).collect(),
            kernel: KernelKind::Daniell,
            bandwidth: None,
            ridge_factor: DEFAULT_RIDGE_FACTOR,
            correction: CorrectionSpec::Gaussian,
            demean: true,
            levels: DEFAULT_LEVELS.to_vec(),
        }
    }

    pub fn with_lags(mut self, lags: Vec<usize>) -> Self {
        self.lags = lags;
        self
    }

    pub fn with_bandwidth(mut self, bandwidth: Option<f64>) -> Self {
        self.bandwidth = bandwidth;
        self
    }

    pub fn with_kernel(mut self, kernel: KernelKind) -> Self {
        self.kernel = kernel;
        self
    }

    pub fn with_correction(mut self, correction: CorrectionSpec) -> Self {
        self.correction = correction;
        self
    }

    pub fn with_levels(mut self, levels: Vec<f64>) -> Self {
        self.levels = levels;
        self
    }

    pub fn with_ridge_factor(mut self, ridge_factor: f64) -> Self {
        self.ridge_factor = ridge_factor;
        self
    }

    pub fn with_demean(mut self, demean: bool) -> Self {
        self.demean = demean;
        self
    }

    pub fn dof(&self) -> u32 {
        2 * self.lags.len() as u32
    }

    /// Validation that does not depend on the data length.
    pub fn validate(&self) -> Result<()> {
        if self.lags.is_empty() {
            return Err(Error::InvalidInput("at least one lag is required".into()));
        }
        for &a in &self.levels {
            if !(a > 0.0 && a < 1.0) {
                return Err(Error::InvalidInput(format!(
                    "significance level must lie in (0, 1), got {a}"
                )));
            }
        }
        if let Some(b) = self.bandwidth {
            KernelSpec::new(self.kernel, b)?;
        }
        if !(self.ridge_factor.is_finite() && self.ridge_factor > 0.0) {
            return Err(Error::InvalidInput(format!(
                "ridge factor must be positive, got {}",
                self.ridge_factor
            )));
        }
        self.correction.validate()
    }

    /// Spectral estimate and the covariances ĉ_T(r) for the configured lags.
    pub fn covariances(&self, series: &[f64]) -> Result<(DftCovariances, SpectralEstimate)> {
        self.covariances_for(series, &self.lags)
    }

    /// Same as [`covariances`](Self::covariances) for an arbitrary lag set,
    /// sharing one DFT and one spectral estimate.
    pub fn covariances_for(
        &self,
        series: &[f64],
        lags: &[usize],
    ) -> Result<(DftCovariances, SpectralEstimate)> {
        let len = series.len();
        if len < MIN_SERIES_LEN {
            return Err(Error::InvalidInput(format!(
                "series length {len} is below the minimum of {MIN_SERIES_LEN}"
            )));
        }
        validate_lags(lags, len)?;
        let prepared = prepare_series(series, self.demean)?;
        let kernel = KernelSpec::resolve(self.kernel, self.bandwidth, len)?;
        let dft = dft_canonical(&prepared)?;
        let spectral = smooth_spectral(&periodogram_from_dft(&dft), kernel, self.ridge_factor)?;
        let z = standardize(&dft, &spectral.values);
        let values: Vec<Complex64> = lags.iter().map(|&r| lag_covariance(&z, r)).collect();
        let corrections = corrections(&self.correction, lags, len)?;
        Ok((
            DftCovariances {
                lags: lags.to_vec(),
                values,
                corrections,
                len,
            },
            spectral,
        ))
    }

    pub fn run(&self, series: &[f64]) -> Result<TestResult> {
        test_statistic(series, self)
    }
}

/// Finite-check, zero-variance check, optional demeaning.
fn prepare_series(series: &[f64], demean: bool) -> Result<Vec<f64>> {
    if let Some(t) = series.iter().position(|x| !x.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "observation {} is not finite",
            t + 1
        )));
    }
    let n = series.len() as f64;
    let mean = series.iter().sum::<f64>() / n;
    let spread = series.iter().map(|x| (x - mean).powi(2)).sum::<f64>();
    if spread == 0.0 {
        return Err(Error::DegenerateSeries("zero variance".into()));
    }
    Ok(if demean {
        series.iter().map(|x| x - mean).collect()
    } else {
        series.to_vec()
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Decision {
    pub level: f64,
    pub critical_value: f64,
    pub reject: bool,
}

/// Outcome of one stationarity test, with the configuration echoed back.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestResult {
    pub statistic: f64,
    pub dof: u32,
    pub p_value: f64,
    pub decisions: Vec<Decision>,
    pub len: usize,
    pub lags: Vec<usize>,
    pub covariances: Vec<Complex64>,
    pub corrections: Vec<f64>,
    pub kernel: KernelSpec,
    pub ridge_factor: f64,
    pub ridge: f64,
    pub correction: CorrectionSpec,
    pub demeaned: bool,
    pub bandwidth_warning: Option<BandwidthWarning>,
}

impl TestResult {
    pub fn rejects_at(&self, level: f64) -> Option<bool> {
        self.decisions
            .iter()
            .find(|d| d.level == level)
            .map(|d| d.reject)
    }
}

/// Decisions at each level: reject when the statistic exceeds the
/// (1 − α) quantile of χ²_dof.
pub fn decide(statistic: f64, dof: u32, levels: &[f64]) -> Result<Vec<Decision>> {
    levels
        .iter()
        .map(|&level| {
            let critical_value = chisq_quantile(1.0 - level, dof)?;
            Ok(Decision {
                level,
                critical_value,
                reject: statistic > critical_value,
            })
        })
        .collect()
}

/// 𝒯_m = T Σ_n |ĉ_T(r_n)|² / (1 + κ_{r_n}/2) with its χ²_{2m} p-value.
pub fn test_statistic(series: &[f64], config: &TestConfig) -> Result<TestResult> {
    config.validate()?;
    let (covs, spectral) = config.covariances(series)?;
    let statistic = covs.statistic();
    if !statistic.is_finite() {
        return Err(Error::NonFinite {
            location: "test statistic".into(),
        });
    }
    let dof = config.dof();
    let p_value = chisq_sf(statistic, dof)?;
    Ok(TestResult {
        statistic,
        dof,
        p_value,
        decisions: decide(statistic, dof, &config.levels)?,
        len: series.len(),
        lags: covs.lags,
        covariances: covs.values,
        corrections: covs.corrections,
        kernel: spectral.kernel,
        ridge_factor: config.ridge_factor,
        ridge: spectral.ridge,
        correction: config.correction.clone(),
        demeaned: config.demean,
        bandwidth_warning: spectral.bandwidth_warning,
    })
}
