//! Periodogram and kernel-smoothed spectral density estimates on the
//! canonical frequency grid.
//!
//! The smoother is circular: frequency indices wrap modulo T. Kernel
//! arguments are measured in cycles, so a bandwidth b covers offsets
//! |j − k| ≤ bT/2 on the grid. Discrete weights are renormalized to sum to
//! one, which makes a flat periodogram come back unchanged.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::dft_canonical;

/// Default relative ridge: values are floored at this fraction of the mean
/// periodogram.
pub const DEFAULT_RIDGE_FACTOR: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum KernelKind {
    /// Flat kernel on [-1/2, 1/2].
    #[default]
    Daniell,
    /// Triangular kernel 2(1 − 2|x|) on [-1/2, 1/2].
    Bartlett,
}

impl KernelKind {
    /// Kernel density; both kinds integrate to 1 over [-1/2, 1/2].
    pub fn eval(&self, x: f64) -> f64 {
        let ax = x.abs();
        if ax > 0.5 {
            return 0.0;
        }
        match self {
            KernelKind::Daniell => 1.0,
            KernelKind::Bartlett => 2.0 * (1.0 - 2.0 * ax),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            KernelKind::Daniell => "daniell",
            KernelKind::Bartlett => "bartlett",
        }
    }
}

impl std::str::FromStr for KernelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "daniell" | "flat" => Ok(KernelKind::Daniell),
            "bartlett" | "triangular" => Ok(KernelKind::Bartlett),
            other => Err(Error::InvalidInput(format!(
                "unknown kernel '{other}' (expected daniell or bartlett)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelSpec {
    pub kind: KernelKind,
    pub bandwidth: f64,
}

/// Raised (not as an error) when b falls outside (T^{-1/2}, T^{-1/4}).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BandwidthWarning {
    pub bandwidth: f64,
    pub lower: f64,
    pub upper: f64,
}

impl fmt::Display for BandwidthWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "bandwidth {} outside the recommended window ({}, {})",
            self.bandwidth, self.lower, self.upper
        )
    }
}

impl KernelSpec {
    pub fn new(kind: KernelKind, bandwidth: f64) -> Result<Self> {
        if !(bandwidth > 0.0 && bandwidth < 0.5) {
            return Err(Error::InvalidInput(format!(
                "bandwidth must lie in (0, 1/2), got {bandwidth}"
            )));
        }
        Ok(Self { kind, bandwidth })
    }

    /// b = T^{-1/3}, the geometric midpoint of (T^{-1/2}, T^{-1/4}).
    pub fn auto(kind: KernelKind, len: usize) -> Self {
        Self {
            kind,
            bandwidth: default_bandwidth(len),
        }
    }

    /// Resolve an optional user bandwidth against the series length.
    pub fn resolve(kind: KernelKind, bandwidth: Option<f64>, len: usize) -> Result<Self> {
        match bandwidth {
            Some(b) => Self::new(kind, b),
            None => Ok(Self::auto(kind, len)),
        }
    }

    pub fn window(&self, len: usize) -> f64 {
        self.bandwidth * len as f64
    }

    pub fn bandwidth_warning(&self, len: usize) -> Option<BandwidthWarning> {
        let n = len as f64;
        let (lower, upper) = (n.powf(-0.5), n.powf(-0.25));
        if self.bandwidth > lower && self.bandwidth < upper {
            None
        } else {
            Some(BandwidthWarning {
                bandwidth: self.bandwidth,
                lower,
                upper,
            })
        }
    }

    /// Normalized weights for offsets −h..=h, with h the largest offset in
    /// the kernel support (capped so the window never wraps onto itself).
    pub fn weights(&self, len: usize) -> Result<Vec<f64>> {
        let window = self.window(len);
        if window < 3.0 {
            return Err(Error::BandwidthTooSmall {
                bandwidth: self.bandwidth,
                len,
                window,
            });
        }
        let half = ((window / 2.0).floor() as usize).min((len - 1) / 2);
        let raw: Vec<f64> = (-(half as i64)..=half as i64)
            .map(|d| self.kind.eval(d as f64 / window))
            .collect();
        let total: f64 = raw.iter().sum();
        Ok(raw.into_iter().map(|w| w / total).collect())
    }
}

pub fn default_bandwidth(len: usize) -> f64 {
    (len as f64).powf(-1.0 / 3.0)
}

/// Kernel estimate f̂_T(ω_k), k = 1..T, in the same layout as the DFT.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralEstimate {
    pub values: Vec<f64>,
    pub kernel: KernelSpec,
    pub ridge: f64,
    pub len: usize,
    pub bandwidth_warning: Option<BandwidthWarning>,
}

impl SpectralEstimate {
    /// f̂ at frequency index k, wrapping modulo T.
    pub fn at(&self, k: i64) -> f64 {
        self.values[(k - 1).rem_euclid(self.len as i64) as usize]
    }
}

/// |J_T(ω_k)|² for k = 1..T.
pub fn periodogram(series: &[f64]) -> Result<Vec<f64>> {
    Ok(periodogram_from_dft(&dft_canonical(series)?))
}

pub fn periodogram_from_dft(dft: &[Complex64]) -> Vec<f64> {
    dft.iter().map(|z| z.norm_sqr()).collect()
}

/// Circular kernel smoothing of a periodogram, floored at
/// `ridge_factor × mean(periodogram)`.
pub fn smooth_spectral(
    periodogram: &[f64],
    kernel: KernelSpec,
    ridge_factor: f64,
) -> Result<SpectralEstimate> {
    let len = periodogram.len();
    if len < 2 {
        return Err(Error::InvalidInput("periodogram needs at least 2 ordinates".into()));
    }
    if !(ridge_factor.is_finite() && ridge_factor > 0.0) {
        return Err(Error::InvalidInput(format!(
            "ridge factor must be positive and finite, got {ridge_factor}"
        )));
    }
    if let Some(k) = periodogram.iter().position(|v| !v.is_finite() || *v < 0.0) {
        return Err(Error::InvalidInput(format!(
            "periodogram ordinate {} is negative or non-finite",
            k + 1
        )));
    }
    let weights = kernel.weights(len)?;
    let half = (weights.len() / 2) as i64;

    let mean = periodogram.iter().sum::<f64>() / len as f64;
    let ridge = ridge_factor * mean;
    if ridge <= 0.0 {
        return Err(Error::DegenerateSeries("periodogram is identically zero".into()));
    }

    let n = len as i64;
    let values = (0..n)
        .map(|k| {
            let smoothed: f64 = weights
                .iter()
                .zip(-half..=half)
                .map(|(w, d)| w * periodogram[(k + d).rem_euclid(n) as usize])
                .sum();
            smoothed.max(ridge)
        })
        .collect();

    Ok(SpectralEstimate {
        values,
        kernel,
        ridge,
        len,
        bandwidth_warning: kernel.bandwidth_warning(len),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{gauss_stream, RngStream};
    use std::f64::consts::PI;

    #[test]
    fn periodogram_of_zero_series() {
        assert!(periodogram(&[0.0; 32]).unwrap().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn periodogram_cosine_mass() {
        let x: Vec<f64> = (1..=16).map(|t| (2.0 * PI * t as f64 * 3.0 / 16.0).cos()).collect();
        let p = periodogram(&x).unwrap();
        for (i, v) in p.iter().enumerate() {
            let k = i + 1;
            if k == 3 || k == 13 {
                assert!((v - 64.0 / (2.0 * PI * 16.0)).abs() < 1e-12);
            } else {
                assert!(*v < 1e-24);
            }
        }
    }

    #[test]
    fn white_noise_periodogram_mean() {
        let reps = 50;
        let mut total = 0.0;
        for r in 0..reps {
            let x = gauss_stream(&RngStream::new(11, r), 4096);
            let p = periodogram(&x).unwrap();
            total += p.iter().sum::<f64>() / p.len() as f64;
        }
        let mean = total / reps as f64;
        assert!((mean - 1.0 / (2.0 * PI)).abs() < 0.01, "{mean}");
    }

    #[test]
    fn kernels_integrate_to_one() {
        for kind in [KernelKind::Daniell, KernelKind::Bartlett] {
            let n = 100_000;
            let h = 1.0 / n as f64;
            let s: f64 = (0..n).map(|i| kind.eval(-0.5 + (i as f64 + 0.5) * h) * h).sum();
            assert!((s - 1.0).abs() < 1e-6, "{kind:?}: {s}");
            assert_eq!(kind.eval(0.3), kind.eval(-0.3));
            assert_eq!(kind.eval(0.51), 0.0);
        }
    }

    #[test]
    fn constant_periodogram_is_preserved() {
        for kind in [KernelKind::Daniell, KernelKind::Bartlett] {
            for b in [0.01, 0.05, 0.13, 0.3, 0.49] {
                let p = vec![2.5; 300];
                let kernel = KernelSpec::new(kind, b).unwrap();
                let est = smooth_spectral(&p, kernel, DEFAULT_RIDGE_FACTOR).unwrap();
                for v in &est.values {
                    assert!((v - 2.5).abs() < 1e-12, "{kind:?} b={b}: {v}");
                }
            }
        }
    }

    #[test]
    fn bandwidth_too_small() {
        let kernel = KernelSpec::new(KernelKind::Daniell, 0.005).unwrap();
        let err = smooth_spectral(&vec![1.0; 512], kernel, 1e-3).unwrap_err();
        assert!(matches!(err, Error::BandwidthTooSmall { .. }));
    }

    #[test]
    fn bandwidth_warning_window() {
        let t = 512;
        assert!(KernelSpec::auto(KernelKind::Daniell, t).bandwidth_warning(t).is_none());
        let narrow = KernelSpec::new(KernelKind::Daniell, 0.01).unwrap();
        assert!(narrow.bandwidth_warning(t).is_some());
        let wide = KernelSpec::new(KernelKind::Daniell, 0.3).unwrap();
        assert!(wide.bandwidth_warning(t).is_some());
        assert!(KernelSpec::new(KernelKind::Daniell, 0.0).is_err());
        assert!(KernelSpec::new(KernelKind::Daniell, 0.5).is_err());
    }

    #[test]
    fn ridge_floors_values() {
        let mut p = vec![0.0; 256];
        p[10] = 100.0;
        let kernel = KernelSpec::new(KernelKind::Daniell, 0.05).unwrap();
        let est = smooth_spectral(&p, kernel, 0.01).unwrap();
        let ridge = 0.01 * 100.0 / 256.0;
        assert_eq!(est.ridge, ridge);
        assert!(est.values.iter().all(|&v| v >= ridge));
        assert!(est.values.contains(&ridge));
    }

    #[test]
    fn flat_kernel_locality() {
        let len = 200;
        let kernel = KernelSpec::new(KernelKind::Daniell, 0.1).unwrap();
        let base = vec![1.0; len];
        let mut bumped = base.clone();
        bumped[100] = 50.0;
        let a = smooth_spectral(&base, kernel, 1e-3).unwrap();
        let b = smooth_spectral(&bumped, kernel, 1e-3).unwrap();
        let reach = (kernel.window(len) / 2.0).ceil() as i64;
        for k in 0..len as i64 {
            let dist = (k - 100).rem_euclid(len as i64).min((100 - k).rem_euclid(len as i64));
            if dist > reach {
                assert_eq!(a.values[k as usize], b.values[k as usize], "k={k}");
            }
        }
    }

    #[test]
    fn zero_periodogram_is_degenerate() {
        let kernel = KernelSpec::new(KernelKind::Daniell, 0.1).unwrap();
        assert!(matches!(
            smooth_spectral(&[0.0; 64], kernel, 1e-3),
            Err(Error::DegenerateSeries(_))
        ));
    }

    #[test]
    fn circular_wrap_index() {
        let kernel = KernelSpec::new(KernelKind::Daniell, 0.1).unwrap();
        let est = smooth_spectral(&[1.0; 64], kernel, 1e-3).unwrap();
        assert_eq!(est.at(0), est.values[63]);
        assert_eq!(est.at(65), est.values[0]);
    }
}
