//! Discrete Fourier transform at the canonical frequencies.
//!
//! The transform is J(ω_k) = (2πT)^{-1/2} Σ_{t=1}^{T} X_t e^{i t ω_k} with
//! ω_k = 2πk/T for k = 1..T. Output vectors are laid out so that position
//! `i` holds k = i + 1; position T − 1 therefore holds the zero frequency
//! (ω_T = 2π ≡ 0).

use std::cell::RefCell;
use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

/// The canonical Fourier grid ω_k = 2πk/T, k = 1..T, with indices taken
/// modulo T.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FrequencyGrid {
    len: usize,
}

impl FrequencyGrid {
    pub fn new(len: usize) -> Result<Self> {
        if len == 0 {
            return Err(Error::InvalidInput("frequency grid needs T >= 1".into()));
        }
        Ok(Self { len })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// ω_k for any integer k; k and k + T give the same frequency modulo 2π
    /// but the returned value is 2πk/T literally.
    pub fn omega(&self, k: i64) -> f64 {
        2.0 * PI * k as f64 / self.len as f64
    }

    /// Storage position of frequency index k (k ≡ k + T).
    pub fn position(&self, k: i64) -> usize {
        (k - 1).rem_euclid(self.len as i64) as usize
    }

    /// Frequencies in storage order: ω_1, ..., ω_T.
    pub fn frequencies(&self) -> Vec<f64> {
        (1..=self.len as i64).map(|k| self.omega(k)).collect()
    }
}

fn check_series(series: &[f64]) -> Result<()> {
    if series.len() < 2 {
        return Err(Error::InvalidInput(format!(
            "DFT needs at least 2 observations, got {}",
            series.len()
        )));
    }
    if let Some(t) = series.iter().position(|x| !x.is_finite()) {
        return Err(Error::NonFinite {
            location: format!("observation {}", t + 1),
        });
    }
    Ok(())
}

/// DFT at the canonical frequencies via FFT; works for any T ≥ 2.
pub fn dft_canonical(series: &[f64]) -> Result<Vec<Complex64>> {
    check_series(series)?;
    let n = series.len();
    let mut buf: Vec<Complex64> = series.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    // rustfft's inverse transform computes Σ_s x_s e^{+2πi s k / n} without scaling.
    let fft = PLANNER.with(|p| p.borrow_mut().plan_fft_inverse(n));
    fft.process(&mut buf);

    let norm = 1.0 / (2.0 * PI * n as f64).sqrt();
    // Shifting t = s + 1 multiplies bin k by e^{iω_k}; bin 0 is stored last.
    let out = (1..=n)
        .map(|k| {
            let omega = 2.0 * PI * k as f64 / n as f64;
            buf[k % n] * Complex64::from_polar(norm, omega)
        })
        .collect();
    Ok(out)
}

/// Direct O(T²) evaluation of the same transform. Used as a reference for
/// the FFT path.
pub fn dft_direct(series: &[f64]) -> Result<Vec<Complex64>> {
    check_series(series)?;
    let n = series.len();
    let norm = 1.0 / (2.0 * PI * n as f64).sqrt();
    let out = (1..=n)
        .map(|k| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (s, &x) in series.iter().enumerate() {
                let t = (s + 1) as u128;
                // reduce t*k mod n before scaling to keep the phase exact
                let phase = ((t * k as u128) % n as u128) as f64;
                acc += Complex64::from_polar(x, 2.0 * PI * phase / n as f64);
            }
            acc * norm
        })
        .collect();
    Ok(out)
}
