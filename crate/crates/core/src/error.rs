use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// Variants fall into two families: input errors (bad data, bad flags,
/// invalid lags) and numerical errors (non-finite values, degenerate
/// spectra). [`Error::is_numerical`] tells them apart, which the CLI uses
/// to pick an exit code.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid lag {lag} for series of length {len}: lags must lie in 1..{len} and differ from 0 and T/2")]
    InvalidLag { lag: i64, len: usize },

    #[error("bandwidth {bandwidth} too small for T = {len}: b*T = {window:.3} < 3")]
    BandwidthTooSmall {
        bandwidth: f64,
        len: usize,
        window: f64,
    },

    #[error("series is degenerate: {0}")]
    DegenerateSeries(String),

    #[error("non-finite value at {location}")]
    NonFinite { location: String },

    #[error("transfer function vanishes (|A| = {modulus:e}) at omega = {omega}")]
    DegenerateTransfer { omega: f64, modulus: f64 },

    #[error("integrated spectrum {value:e} below 1e-10 at omega = {omega}")]
    DegenerateSpectrum { omega: f64, value: f64 },

    #[error("invalid correction: {0}")]
    InvalidCorrection(String),

    #[error("segmentation depth {depth} leaves blocks of length {leaf_len} < {min_len}")]
    SegmentationDepth {
        depth: u32,
        leaf_len: usize,
        min_len: usize,
    },

    #[error("explosive AR polynomial in {context}: root modulus {root_modulus:.6} <= 1")]
    Stability { context: String, root_modulus: f64 },

    #[error("not implemented: {0}")]
    NotImplemented(String),

    #[error("replication {index} failed: {source}")]
    Replication {
        index: u64,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// True for errors that stem from numerical breakdown rather than from
    /// malformed input.
    pub fn is_numerical(&self) -> bool {
        match self {
            Error::NonFinite { .. }
            | Error::DegenerateTransfer { .. }
            | Error::DegenerateSpectrum { .. } => true,
            Error::Replication { source, .. } => source.is_numerical(),
            _ => false,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
