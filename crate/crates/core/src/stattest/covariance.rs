use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::dft_canonical;
use crate::spectral::SpectralEstimate;

/// Check that every lag lies in 1..T−1, avoids T/2, and appears once.
pub fn validate_lags(lags: &[usize], len: usize) -> Result<()> {
    if lags.is_empty() {
        return Err(Error::InvalidInput("at least one lag is required".into()));
    }
    for (i, &r) in lags.iter().enumerate() {
        let half = len.is_multiple_of(2) && r == len / 2;
        if r == 0 || r >= len || half {
            return Err(Error::InvalidLag {
                lag: r as i64,
                len,
            });
        }
        if lags[..i].contains(&r) {
            return Err(Error::InvalidInput(format!("lag {r} listed twice")));
        }
    }
    Ok(())
}

/// The standardized DFT covariances ĉ_T(r_n) over a lag set, with the
/// variance-correction denominators 1 + κ_{r_n}/2.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DftCovariances {
    pub lags: Vec<usize>,
    pub values: Vec<Complex64>,
    pub corrections: Vec<f64>,
    pub len: usize,
}

impl DftCovariances {
    /// Per-lag contributions T|ĉ_T(r_n)|² / correction_n.
    pub fn contributions(&self) -> Vec<f64> {
        let t = self.len as f64;
        self.values
            .iter()
            .zip(&self.corrections)
            .map(|(c, k)| t * c.norm_sqr() / k)
            .collect()
    }

    pub fn statistic(&self) -> f64 {
        self.contributions().iter().sum()
    }
}

/// J_T(ω_k)/√d_k for k = 1..T, where `denominators` are spectral values
/// in DFT layout.
pub(crate) fn standardize(dft: &[Complex64], denominators: &[f64]) -> Vec<Complex64> {
    dft.iter()
        .zip(denominators)
        .map(|(j, d)| j / d.sqrt())
        .collect()
}

/// (1/T) Σ_k z_k conj(z_{k+r}), indices modulo T.
pub(crate) fn lag_covariance(z: &[Complex64], lag: usize) -> Complex64 {
    let n = z.len();
    let mut acc = Complex64::new(0.0, 0.0);
    for (k, zk) in z.iter().enumerate() {
        acc += zk * z[(k + lag) % n].conj();
    }
    acc / n as f64
}

fn check_denominators(values: &[f64], len: usize, what: &str) -> Result<()> {
    if values.len() != len {
        return Err(Error::InvalidInput(format!(
            "{what} has {} values but the series has {len}",
            values.len()
        )));
    }
    if let Some(k) = values.iter().position(|v| !(v.is_finite() && *v > 0.0)) {
        return Err(Error::InvalidInput(format!(
            "{what} must be positive and finite; ordinate {} is {}",
            k + 1,
            values[k]
        )));
    }
    Ok(())
}

fn single_lag_check(lag: usize, len: usize) -> Result<()> {
    validate_lags(&[lag], len)
}

/// ĉ_T(r) using the kernel spectral estimate as the standardization.
///
/// The series is used as given; demeaning is the caller's business.
pub fn dft_cov(series: &[f64], lag: usize, spectral: &SpectralEstimate) -> Result<Complex64> {
    single_lag_check(lag, series.len())?;
    check_denominators(&spectral.values, series.len(), "spectral estimate")?;
    let dft = dft_canonical(series)?;
    Ok(lag_covariance(&standardize(&dft, &spectral.values), lag))
}

/// c̃_T(r): the same covariance standardized by a known spectral density
/// sampled on the canonical grid (k = 1..T).
pub fn dft_cov_oracle(series: &[f64], lag: usize, true_spectrum: &[f64]) -> Result<Complex64> {
    single_lag_check(lag, series.len())?;
    check_denominators(true_spectrum, series.len(), "true spectrum")?;
    let dft = dft_canonical(series)?;
    Ok(lag_covariance(&standardize(&dft, true_spectrum), lag))
}
