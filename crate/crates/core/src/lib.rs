//! DFT-covariance Portmanteau test for second-order stationarity.
//!
//! The discrete Fourier transform of a second-order stationary series is
//! close to uncorrelated across canonical frequencies. This crate measures
//! how far that fails: it standardizes the DFT by a kernel spectral
//! estimate, forms the lag-r covariances ĉ_T(r) of the standardized
//! sequence, and sums T|ĉ_T(r)|² over a set of lags into a statistic that
//! is asymptotically χ²_{2m} under stationarity.
//!
//! Modules:
//! - [`numerics`]: DFT, chi-square, quadrature, seeded RNG streams
//! - [`spectral`]: periodogram and kernel-smoothed spectral estimates
//! - [`stattest`]: ĉ_T(r), corrections, the test statistic, segmentation
//! - [`simulate`]: benchmark process generators and local spectra
//! - [`experiments`]: Monte Carlo rejection rates, lag scans, noncentrality
//! - [`input`]: plain-text series ingestion and preprocessing transforms

pub mod error;
pub mod experiments;
pub mod input;
pub mod numerics;
pub mod simulate;
pub mod spectral;
pub mod stattest;

pub use error::{Error, Result};
