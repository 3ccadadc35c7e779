//! The stationarity test: standardized DFT covariances, variance
//! corrections, the Portmanteau statistic and recursive segmentation.

mod correction;
mod covariance;
mod segment;
mod statistic;

pub use correction::{
    corrections, phase, transfer, varphi, varphi_with_grid, CorrectionSpec, VARPHI_GRID,
};
pub use covariance::{dft_cov, dft_cov_oracle, validate_lags, DftCovariances};
pub use segment::{segment_bounds, segment_test, SegmentBlock, SegmentReport};
pub use statistic::{
    decide, test_statistic, Decision, TestConfig, TestResult, DEFAULT_LEVELS, MIN_SERIES_LEN,
};
