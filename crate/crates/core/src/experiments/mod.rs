//! Monte Carlo rejection studies, lag scans and noncentrality diagnostics.

mod distribution;
mod monte_carlo;
mod power;

pub use distribution::{
    empirical_density, kolmogorov_sf, ks_p_value, ks_statistic, spearman, Histogram, DEFAULT_BINS,
};
pub use monte_carlo::{lag_scan, rejection_rate, McConfig, McReport, ScanReport};
pub use power::{
    integrated_spectrum, noncentrality_b, power_profile, sigma_fourier, PowerGrid, PowerProfile,
    MIN_INTEGRATED_SPECTRUM, MIN_SIGMA_GRID,
};
