use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::curve::Curve;
use super::stability::min_root_modulus;
use crate::error::{Error, Result};
use crate::numerics::{gauss_stream, RngStream};

pub const DEFAULT_BURN_IN: usize = 500;
pub const MIN_GENERATED_LEN: usize = 32;

/// An AR regime that runs up to and including t = ⌊until·T⌋.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArSegment {
    pub until: f64,
    pub ar: Vec<f64>,
}

/// Declarative description of a Gaussian linear generating process with unit
/// innovation variance. AR coefficients follow X_t = Σ a_i X_{t−i} + …, MA
/// coefficients follow … + ε_t + Σ θ_j ε_{t−j}.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum ModelSpec {
    ArMa {
        ar: Vec<f64>,
        #[serde(default)]
        ma: Vec<f64>,
    },
    ChangepointAr {
        segments: Vec<ArSegment>,
    },
    /// X_t = Σ a_i X_{t−i} + σ_t ε_t with σ_t = sigma(t / time_scale);
    /// time_scale defaults to T.
    TvInnovationAr {
        ar: Vec<f64>,
        sigma: Curve,
        #[serde(default)]
        time_scale: Option<f64>,
    },
    /// X_t = σ(t/T) ε_t
    ModulatedNoise {
        sigma: Curve,
    },
    /// X_t = a(t/T) X_{t−1} + ε_t
    TvAr1 {
        coefficient: Curve,
    },
}

/// Grid used to check curve-valued conditions on [0, 1].
const CURVE_CHECK_GRID: usize = 1000;

fn check_stationary(ar: &[f64], context: &str) -> Result<()> {
    if ar.iter().any(|a| !a.is_finite()) {
        return Err(Error::InvalidInput(format!("{context}: AR coefficients must be finite")));
    }
    let root_modulus = min_root_modulus(ar);
    if root_modulus <= 1.0 + 1e-10 {
        return Err(Error::Stability {
            context: context.to_string(),
            root_modulus,
        });
    }
    Ok(())
}

impl ModelSpec {
    /// Structural checks plus, unless `allow_explosive`, stationarity of
    /// every AR polynomial.
    pub fn validate(&self, allow_explosive: bool) -> Result<()> {
        match self {
            ModelSpec::ArMa { ar, ma } => {
                if ma.iter().any(|m| !m.is_finite()) {
                    return Err(Error::InvalidInput("MA coefficients must be finite".into()));
                }
                if !allow_explosive {
                    check_stationary(ar, "ar_ma")?;
                }
            }
            ModelSpec::ChangepointAr { segments } => {
                if segments.is_empty() {
                    return Err(Error::InvalidInput("changepoint model has no segments".into()));
                }
                let mut prev = 0.0;
                for (i, seg) in segments.iter().enumerate() {
                    if !(seg.until > prev && seg.until <= 1.0) {
                        return Err(Error::InvalidInput(format!(
                            "segment fractions must be strictly increasing in (0, 1]; segment {i} has {}",
                            seg.until
                        )));
                    }
                    prev = seg.until;
                    if !allow_explosive {
                        check_stationary(&seg.ar, &format!("changepoint segment {i}"))?;
                    }
                }
                if prev != 1.0 {
                    return Err(Error::InvalidInput("last segment must end at fraction 1".into()));
                }
            }
            ModelSpec::TvInnovationAr {
                ar,
                sigma,
                time_scale,
            } => {
                sigma.validate()?;
                if let Some(s) = time_scale {
                    if !(s.is_finite() && *s > 0.0) {
                        return Err(Error::InvalidInput("time_scale must be positive".into()));
                    }
                }
                if sigma.sample(CURVE_CHECK_GRID).iter().all(|s| *s == 0.0) {
                    return Err(Error::InvalidInput("sigma curve is identically zero".into()));
                }
                if !allow_explosive {
                    check_stationary(ar, "tv_innovation_ar")?;
                }
            }
            ModelSpec::ModulatedNoise { sigma } => {
                sigma.validate()?;
                if let Some(s) = sigma.sample(CURVE_CHECK_GRID).iter().find(|s| **s <= 0.0) {
                    return Err(Error::InvalidInput(format!(
                        "modulating sigma(u) must be positive on [0, 1], found {s}"
                    )));
                }
            }
            ModelSpec::TvAr1 { coefficient } => {
                coefficient.validate()?;
                if !allow_explosive {
                    let worst = coefficient
                        .sample(CURVE_CHECK_GRID)
                        .iter()
                        .fold(0.0_f64, |m, a| m.max(a.abs()));
                    if worst >= 1.0 - 1e-10 {
                        return Err(Error::Stability {
                            context: "tv_ar1".into(),
                            root_modulus: 1.0 / worst,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    fn ma_order(&self) -> usize {
        match self {
            ModelSpec::ArMa { ma, .. } => ma.len(),
            _ => 0,
        }
    }

    fn is_recursive(&self) -> bool {
        !matches!(self, ModelSpec::ModulatedNoise { .. })
    }

    /// Number of innovations [`generate`] draws for a series of length
    /// `len`.
    pub fn innovations_needed(&self, len: usize, burn_in: usize) -> usize {
        if self.is_recursive() {
            self.ma_order() + burn_in + len
        } else {
            len
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub len: usize,
    pub burn_in: usize,
    pub rng: RngStream,
    /// Skip the AR stationarity check.
    pub allow_explosive: bool,
}

impl GeneratorConfig {
    pub fn new(len: usize, rng: RngStream) -> Self {
        Self {
            len,
            burn_in: DEFAULT_BURN_IN,
            rng,
            allow_explosive: false,
        }
    }

    pub fn with_burn_in(mut self, burn_in: usize) -> Self {
        self.burn_in = burn_in;
        self
    }
}

/// Draw one realization of length `config.len`.
pub fn generate(spec: &ModelSpec, config: &GeneratorConfig) -> Result<Vec<f64>> {
    if config.len < MIN_GENERATED_LEN {
        return Err(Error::InvalidInput(format!(
            "generated series needs T >= {MIN_GENERATED_LEN}, got {}",
            config.len
        )));
    }
    spec.validate(config.allow_explosive)?;
    let eps = gauss_stream(&config.rng, spec.innovations_needed(config.len, config.burn_in));
    generate_with_innovations(spec, config.len, config.burn_in, &eps, config.allow_explosive)
}

fn ar_step(x: &[f64], s: usize, ar: &[f64]) -> f64 {
    ar.iter()
        .enumerate()
        .filter(|(i, _)| s > *i)
        .map(|(i, a)| a * x[s - i - 1])
        .sum()
}

/// Deterministic core of [`generate`]: builds the series from caller-supplied
/// innovations. Recursive models consume `ma_order + burn_in + len` values
/// (the first `ma_order` only feed MA lags); modulated noise consumes `len`.
///
/// Before t = 1 the process runs with its dynamics frozen at the start:
/// the first changepoint segment, or curves evaluated at u = 0. Change
/// points switch at t = ⌊fraction·T⌋ + 1 and keep the running state.
pub fn generate_with_innovations(
    spec: &ModelSpec,
    len: usize,
    burn_in: usize,
    innovations: &[f64],
    allow_explosive: bool,
) -> Result<Vec<f64>> {
    spec.validate(allow_explosive)?;
    let needed = spec.innovations_needed(len, burn_in);
    if innovations.len() < needed {
        return Err(Error::InvalidInput(format!(
            "need {needed} innovations, got {}",
            innovations.len()
        )));
    }
    let total = burn_in + len;
    // time index of buffer position s
    let time = |s: usize| s as i64 - burn_in as i64 + 1;

    let out = match spec {
        ModelSpec::ModulatedNoise { sigma } => (1..=len)
            .map(|t| sigma.eval(t as f64 / len as f64) * innovations[t - 1])
            .collect(),
        ModelSpec::ArMa { ar, ma } => {
            let q = ma.len();
            let mut x = vec![0.0; total];
            for s in 0..total {
                let ma_part: f64 = ma
                    .iter()
                    .enumerate()
                    .map(|(j, th)| th * innovations[q + s - j - 1])
                    .sum();
                x[s] = ar_step(&x, s, ar) + innovations[q + s] + ma_part;
            }
            x.split_off(burn_in)
        }
        ModelSpec::ChangepointAr { segments } => {
            let bounds: Vec<i64> = segments
                .iter()
                .map(|seg| (seg.until * len as f64).floor() as i64)
                .collect();
            let mut x = vec![0.0; total];
            for s in 0..total {
                let t = time(s);
                let seg = bounds.iter().position(|&b| t <= b).unwrap_or(segments.len() - 1);
                x[s] = ar_step(&x, s, &segments[seg].ar) + innovations[s];
            }
            x.split_off(burn_in)
        }
        ModelSpec::TvInnovationAr {
            ar,
            sigma,
            time_scale,
        } => {
            let scale = time_scale.unwrap_or(len as f64);
            let mut x = vec![0.0; total];
            for s in 0..total {
                let t = time(s).max(0);
                x[s] = ar_step(&x, s, ar) + sigma.eval(t as f64 / scale) * innovations[s];
            }
            x.split_off(burn_in)
        }
        ModelSpec::TvAr1 { coefficient } => {
            let mut x = vec![0.0; total];
            for s in 0..total {
                let t = time(s).max(0);
                let prev = if s > 0 { x[s - 1] } else { 0.0 };
                x[s] = coefficient.eval(t as f64 / len as f64) * prev + innovations[s];
            }
            x.split_off(burn_in)
        }
    };
    Ok(out)
}

/// (2π)^{-1} |1 + Σ θ_j e^{ijω}|² / |1 − Σ a_j e^{ijω}|².
pub fn arma_spectrum(ar: &[f64], ma: &[f64], omega: f64) -> f64 {
    let poly = |coefs: &[f64], sign: f64| {
        coefs
            .iter()
            .enumerate()
            .fold(Complex64::new(1.0, 0.0), |acc, (j, c)| {
                acc + Complex64::from_polar(sign * c, omega * (j + 1) as f64)
            })
    };
    poly(ma, 1.0).norm_sqr() / poly(ar, -1.0).norm_sqr() / (2.0 * PI)
}

/// A time-varying spectral density f(u, ω) on [0, 1] × [0, 2π].
pub trait TimeVaryingSpectrum: Sync {
    fn eval(&self, u: f64, omega: f64) -> f64;
}

impl<F> TimeVaryingSpectrum for F
where
    F: Fn(f64, f64) -> f64 + Sync + ?Sized,
{
    fn eval(&self, u: f64, omega: f64) -> f64 {
        self(u, omega)
    }
}

/// The local spectrum f(u, ω) of a [`ModelSpec`].
#[derive(Debug, Clone, PartialEq)]
pub struct LocalSpectrum {
    spec: ModelSpec,
    len: Option<usize>,
}

impl LocalSpectrum {
    pub fn spec(&self) -> &ModelSpec {
        &self.spec
    }
}

impl TimeVaryingSpectrum for LocalSpectrum {
    fn eval(&self, u: f64, omega: f64) -> f64 {
        match &self.spec {
            ModelSpec::ArMa { ar, ma } => arma_spectrum(ar, ma, omega),
            ModelSpec::ChangepointAr { segments } => {
                let seg = segments
                    .iter()
                    .find(|s| u <= s.until)
                    .unwrap_or_else(|| segments.last().expect("validated"));
                arma_spectrum(&seg.ar, &[], omega)
            }
            ModelSpec::TvInnovationAr {
                ar,
                sigma,
                time_scale,
            } => {
                let v = match (self.len, time_scale) {
                    (Some(len), Some(scale)) => u * len as f64 / scale,
                    _ => u,
                };
                sigma.eval(v).powi(2) * arma_spectrum(ar, &[], omega)
            }
            ModelSpec::ModulatedNoise { sigma } => sigma.eval(u).powi(2) / (2.0 * PI),
            ModelSpec::TvAr1 { coefficient } => {
                arma_spectrum(&[coefficient.eval(u)], &[], omega)
            }
        }
    }
}

/// f(u, ω) for `spec`. For a `TvInnovationAr` with an explicit time scale,
/// rescaled time is read as t / time_scale, i.e. as if T = time_scale;
/// see [`local_spectrum_for_len`] for a specific sample size.
pub fn local_spectrum(spec: &ModelSpec) -> Result<LocalSpectrum> {
    spec.validate(true)?;
    Ok(LocalSpectrum {
        spec: spec.clone(),
        len: None,
    })
}

/// f(u, ω) with rescaled time u = t/T for a series of length `len`.
pub fn local_spectrum_for_len(spec: &ModelSpec, len: usize) -> Result<LocalSpectrum> {
    spec.validate(true)?;
    Ok(LocalSpectrum {
        spec: spec.clone(),
        len: Some(len),
    })
}
