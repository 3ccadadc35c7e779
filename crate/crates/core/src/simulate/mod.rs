//! Generators for stationary ARMA, change-point AR and locally stationary
//! processes, together with their local spectra f(u, ω).

mod curve;
mod model;
mod presets;
mod stability;

pub use curve::{Curve, Piece};
pub use model::{
    arma_spectrum, generate, generate_with_innovations, local_spectrum, local_spectrum_for_len,
    ArSegment, GeneratorConfig, LocalSpectrum, ModelSpec, TimeVaryingSpectrum, DEFAULT_BURN_IN,
    MIN_GENERATED_LEN,
};
pub use presets::{model4_sigma, model6_sigma, preset, PRESET_NAMES};
pub use stability::{min_root_modulus, reciprocal_roots};
