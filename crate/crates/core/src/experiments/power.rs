//! Noncentrality of ĉ_T(r) under locally stationary alternatives.
//!
//! For a local spectrum f(u, ω) with integrated spectrum
//! f(ω) = ∫₀¹ f(u, ω) du,
//!
//! B(r) = (2π)^{-1} ∫₀^{2π} ∫₀¹ f(u, λ) e^{−2πiru} / √(f(λ) f(λ + ω_r)) du dλ.
//!
//! For fixed r the shift ω_r = 2πr/T vanishes as T grows, so the default
//! evaluates the continuum limit with ω_r = 0.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{trapezoid_1d, Axis};
use crate::simulate::{Curve, TimeVaryingSpectrum};

/// Smallest integrated spectrum accepted in a denominator.
pub const MIN_INTEGRATED_SPECTRUM: f64 = 1e-10;

pub const MIN_SIGMA_GRID: usize = 64;

/// Panel counts for the (u, λ) trapezoid rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerGrid {
    pub u_intervals: usize,
    pub omega_intervals: usize,
}

impl PowerGrid {
    pub const MIN_U: usize = 128;
    pub const MIN_OMEGA: usize = 256;

    pub fn new(u_intervals: usize, omega_intervals: usize) -> Result<Self> {
        let grid = Self {
            u_intervals,
            omega_intervals,
        };
        grid.validate()?;
        Ok(grid)
    }

    pub fn validate(&self) -> Result<()> {
        if self.u_intervals < Self::MIN_U || self.omega_intervals < Self::MIN_OMEGA {
            return Err(Error::InvalidInput(format!(
                "quadrature grid {}x{} is below the minimum {}x{}",
                self.u_intervals,
                self.omega_intervals,
                Self::MIN_U,
                Self::MIN_OMEGA
            )));
        }
        Ok(())
    }
}

impl Default for PowerGrid {
    fn default() -> Self {
        Self {
            u_intervals: 1024,
            omega_intervals: 256,
        }
    }
}

/// â_r = T₀^{-1} Σ_{t=1}^{T₀} σ(t/T₀) e^{−i2πrt/T₀}.
pub fn sigma_fourier<S: Fn(f64) -> f64>(sigma: S, r: i64, grid: usize) -> Result<Complex64> {
    if grid < MIN_SIGMA_GRID {
        return Err(Error::InvalidInput(format!(
            "Fourier grid {grid} is below the minimum of {MIN_SIGMA_GRID}"
        )));
    }
    let n = grid as f64;
    let sum = (1..=grid).fold(Complex64::new(0.0, 0.0), |acc, t| {
        let angle = -2.0 * PI * ((r * t as i64).rem_euclid(grid as i64)) as f64 / n;
        acc + Complex64::from_polar(sigma(t as f64 / n), angle)
    });
    Ok(sum / n)
}

fn integrate_u<F: TimeVaryingSpectrum + ?Sized>(f: &F, omega: f64, u_intervals: usize) -> Result<f64> {
    let value = trapezoid_1d(|u| f.eval(u, omega), Axis::new(0.0, 1.0, u_intervals))?;
    if !(value >= MIN_INTEGRATED_SPECTRUM) {
        return Err(Error::DegenerateSpectrum { omega, value });
    }
    Ok(value)
}

/// f(ω) = ∫₀¹ f(u, ω) du at each ω, by the trapezoid rule in u.
pub fn integrated_spectrum<F: TimeVaryingSpectrum + ?Sized>(
    f: &F,
    omegas: &[f64],
    u_intervals: usize,
) -> Result<Vec<f64>> {
    omegas
        .iter()
        .map(|&w| integrate_u(f, w, u_intervals))
        .collect()
}

/// B(r) by double trapezoid quadrature. `len = Some(T)` evaluates the
/// denominator at the finite shift ω_r = 2πr/T; `None` takes ω_r = 0.
pub fn noncentrality_b<F: TimeVaryingSpectrum + ?Sized>(
    f: &F,
    r: i64,
    grid: PowerGrid,
    len: Option<usize>,
) -> Result<Complex64> {
    grid.validate()?;
    let shift = match len {
        Some(0) => return Err(Error::InvalidInput("finite length must be positive".into())),
        Some(t) => 2.0 * PI * r as f64 / t as f64,
        None => 0.0,
    };
    let u_axis = Axis::new(0.0, 1.0, grid.u_intervals);
    let outer = |lambda: f64| -> Result<Complex64> {
        let inner = trapezoid_1d(
            |u| Complex64::from_polar(f.eval(u, lambda), -2.0 * PI * r as f64 * u),
            u_axis,
        )?;
        let base = integrate_u(f, lambda, grid.u_intervals)?;
        let shifted = if shift == 0.0 {
            base
        } else {
            integrate_u(f, lambda + shift, grid.u_intervals)?
        };
        Ok(inner / (base * shifted).sqrt())
    };
    // evaluate the λ-integrand once per node so errors surface with context
    let n = grid.omega_intervals;
    let step = 2.0 * PI / n as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..=n {
        let w = if j == 0 || j == n { 0.5 } else { 1.0 };
        acc += outer(j as f64 * step)? * w;
    }
    Ok(acc * step / (2.0 * PI))
}

/// B(r) over a lag set together with the mean vector
/// μ = (Re B(r₁), …, Re B(r_m), Im B(r₁), …, Im B(r_m)).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerProfile {
    pub lags: Vec<i64>,
    pub b_values: Vec<Complex64>,
    pub mu: Vec<f64>,
    pub sigma_fourier: Option<Vec<Complex64>>,
}

impl PowerProfile {
    pub fn magnitudes(&self) -> Vec<f64> {
        self.b_values.iter().map(|b| b.norm()).collect()
    }
}

/// Noncentralities for every lag, plus â_r of `sigma` when given.
pub fn power_profile<F: TimeVaryingSpectrum + ?Sized>(
    f: &F,
    lags: &[i64],
    grid: PowerGrid,
    len: Option<usize>,
    sigma: Option<(&Curve, usize)>,
) -> Result<PowerProfile> {
    use rayon::prelude::*;
    if lags.is_empty() {
        return Err(Error::InvalidInput("lag list is empty".into()));
    }
    let b_values = lags
        .par_iter()
        .map(|&r| noncentrality_b(f, r, grid, len))
        .collect::<Result<Vec<_>>>()?;
    let mu = b_values
        .iter()
        .map(|b| b.re)
        .chain(b_values.iter().map(|b| b.im))
        .collect();
    let sigma_fourier = match sigma {
        Some((curve, grid_len)) => Some(
            lags.iter()
                .map(|&r| sigma_fourier(|u| curve.eval(u), r, grid_len))
                .collect::<Result<Vec<_>>>()?,
        ),
        None => None,
    };
    Ok(PowerProfile {
        lags: lags.to_vec(),
        b_values,
        mu,
        sigma_fourier,
    })
}
