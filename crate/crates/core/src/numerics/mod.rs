//! Numerical building blocks: the canonical-frequency DFT, chi-square
//! distribution functions, trapezoid quadrature and seeded Gaussian streams.

mod chisq;
mod dft;
mod quadrature;
mod rng;

pub use chisq::{chisq_quantile, chisq_sf, gamma_q, ln_gamma};
pub use dft::{dft_canonical, dft_direct, FrequencyGrid};
pub use num_complex::Complex64;
pub use quadrature::{trapezoid_1d, trapezoid_2d, Axis, Integrand, Quadrature, MIN_INTERVALS};
pub use rng::{gauss_stream, RngStream};
