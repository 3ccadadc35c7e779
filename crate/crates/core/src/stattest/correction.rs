//! Fourth-cumulant variance corrections for ĉ_T(r).
//!
//! Under a linear null X_t = Σ ψ_j ε_{t−j} with innovation fourth cumulant
//! κ₄, the real and imaginary parts of √T ĉ_T(r) have variance
//! 1 + (κ₄/2)·varphi(2πr/T), where varphi measures how much the phase of
//! the transfer function rotates over a frequency shift.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default quadrature grid for [`varphi`].
pub const VARPHI_GRID: usize = 4096;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum CorrectionSpec {
    /// κ_r ≡ 0: every denominator is 1.
    #[default]
    Gaussian,
    /// Linear-process plug-in with MA(∞) coefficients ψ (truncated) and κ₄.
    LinearPlugin { psi: Vec<f64>, kappa4: f64 },
    /// Explicit κ_r, one per lag.
    User { kappa: Vec<f64> },
}

impl CorrectionSpec {
    pub fn mode_name(&self) -> &'static str {
        match self {
            CorrectionSpec::Gaussian => "gaussian",
            CorrectionSpec::LinearPlugin { .. } => "linear_plugin",
            CorrectionSpec::User { .. } => "user",
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            CorrectionSpec::Gaussian => Ok(()),
            CorrectionSpec::LinearPlugin { psi, kappa4 } => {
                validate_psi(psi)?;
                if !kappa4.is_finite() {
                    return Err(Error::InvalidCorrection("kappa4 must be finite".into()));
                }
                Ok(())
            }
            CorrectionSpec::User { kappa } => {
                if kappa.iter().any(|k| !k.is_finite()) {
                    return Err(Error::InvalidCorrection("kappa values must be finite".into()));
                }
                Ok(())
            }
        }
    }
}

fn validate_psi(psi: &[f64]) -> Result<()> {
    if psi.is_empty() {
        return Err(Error::InvalidCorrection("psi needs at least one coefficient".into()));
    }
    if psi.iter().any(|p| !p.is_finite()) {
        return Err(Error::InvalidCorrection("psi coefficients must be finite".into()));
    }
    if psi[0] == 0.0 {
        return Err(Error::InvalidCorrection("psi_0 must be non-zero".into()));
    }
    Ok(())
}

/// A(ω) = (2π)^{-1/2} Σ_j ψ_j e^{iωj}.
pub fn transfer(psi: &[f64], omega: f64) -> Complex64 {
    let sum: Complex64 = psi
        .iter()
        .enumerate()
        .map(|(j, &p)| Complex64::from_polar(p, omega * j as f64))
        .sum();
    sum / (2.0 * PI).sqrt()
}

/// Phase φ(ω) = arg A(ω), from the two-argument arctangent.
pub fn phase(psi: &[f64], omega: f64) -> Result<f64> {
    validate_psi(psi).map_err(|e| Error::InvalidInput(e.to_string()))?;
    phase_unchecked(psi, omega)
}

fn phase_unchecked(psi: &[f64], omega: f64) -> Result<f64> {
    let a = transfer(psi, omega);
    let modulus = a.norm();
    if modulus < 1e-12 {
        return Err(Error::DegenerateTransfer { omega, modulus });
    }
    Ok(a.im.atan2(a.re))
}

/// varphi(x) = |(2π)^{-1} ∫_0^{2π} exp(i(φ(ω) − φ(ω + x))) dω|² on the
/// default grid.
pub fn varphi(psi: &[f64], x: f64) -> Result<f64> {
    varphi_with_grid(psi, x, VARPHI_GRID)
}

/// [`varphi`] with an explicit number of quadrature nodes (≥ 1024). The
/// integrand is 2π-periodic, so the rectangle rule is the trapezoid rule.
pub fn varphi_with_grid(psi: &[f64], x: f64, grid: usize) -> Result<f64> {
    validate_psi(psi).map_err(|e| Error::InvalidInput(e.to_string()))?;
    if grid < 1024 {
        return Err(Error::InvalidInput(format!(
            "varphi quadrature needs >= 1024 nodes, got {grid}"
        )));
    }
    if !x.is_finite() {
        return Err(Error::InvalidInput("varphi argument must be finite".into()));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..grid {
        let omega = 2.0 * PI * j as f64 / grid as f64;
        let d = phase_unchecked(psi, omega)? - phase_unchecked(psi, omega + x)?;
        acc += Complex64::from_polar(1.0, d);
    }
    Ok((acc / grid as f64).norm_sqr().clamp(0.0, 1.0))
}

/// Denominators 1 + κ_{r_n}/2 for each lag.
pub fn corrections(spec: &CorrectionSpec, lags: &[usize], len: usize) -> Result<Vec<f64>> {
    spec.validate()?;
    let out: Vec<f64> = match spec {
        CorrectionSpec::Gaussian => vec![1.0; lags.len()],
        CorrectionSpec::LinearPlugin { psi, kappa4 } => {
            if *kappa4 == 0.0 {
                vec![1.0; lags.len()]
            } else {
                lags.iter()
                    .map(|&r| {
                        let x = 2.0 * PI * r as f64 / len as f64;
                        Ok(1.0 + 0.5 * kappa4 * varphi(psi, x)?)
                    })
                    .collect::<Result<_>>()?
            }
        }
        CorrectionSpec::User { kappa } => {
            if kappa.len() != lags.len() {
                return Err(Error::InvalidCorrection(format!(
                    "{} kappa values supplied for {} lags",
                    kappa.len(),
                    lags.len()
                )));
            }
            kappa.iter().map(|k| 1.0 + 0.5 * k).collect()
        }
    };
    if let Some((i, d)) = out.iter().enumerate().find(|(_, d)| !(**d > 0.0)) {
        return Err(Error::InvalidCorrection(format!(
            "denominator for lag {} is {d}, must be positive",
            lags[i]
        )));
    }
    Ok(out)
}
