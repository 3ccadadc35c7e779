//! The six benchmark processes, addressable by name.
//!
//! | name   | process                                                         |
//! |--------|-----------------------------------------------------------------|
//! | model1 | X_t = 0.8 X_{t−1} + ε_t                                         |
//! | model2 | X_t = X_{t−1} − 0.7 X_{t−2} + ε_t + 0.3 ε_{t−1} + 2 ε_{t−3}     |
//! | model3 | AR(2) (1.5, −0.75) up to ⌊0.75T⌋, then AR(1) 0.8               |
//! | model4 | X_t = 0.8 X_{t−1} + σ_t ε_t, σ_t = ½ + sin(2πt/512) + 0.3 cos(2πt/512) |
//! | model5 | AR(1) 0.8 up to ⌊0.5T⌋, then AR(1) 0.6                          |
//! | model6 | X_t = σ(t/T) ε_t with a piecewise-constant σ ∈ {1, 2, 3}         |
//!
//! Model 2 is often quoted with a +0.7 X_{t−2} term; that AR polynomial has
//! a root of modulus ≈ 0.678 and is explosive. The preset uses −0.7, whose
//! roots have modulus ≈ 1.195.

use super::curve::{Curve, Piece};
use super::model::{ArSegment, ModelSpec};
use crate::error::{Error, Result};

pub const PRESET_NAMES: [&str; 6] = ["model1", "model2", "model3", "model4", "model5", "model6"];

/// σ(u) of model 6 as (start in twentieths, value).
const MODEL6_STEPS: [(u32, f64); 12] = [
    (0, 3.0),
    (5, 1.0),
    (6, 3.0),
    (7, 2.0),
    (12, 3.0),
    (13, 2.0),
    (14, 1.0),
    (15, 3.0),
    (16, 1.0),
    (17, 3.0),
    (18, 1.0),
    (19, 2.0),
];

pub fn model6_sigma() -> Curve {
    Curve::Piecewise {
        pieces: MODEL6_STEPS
            .iter()
            .map(|&(k, value)| Piece {
                start: k as f64 / 20.0,
                value,
            })
            .collect(),
    }
}

pub fn model4_sigma() -> Curve {
    Curve::Harmonic {
        offset: 0.5,
        sin_amp: 1.0,
        cos_amp: 0.3,
        cycles: 1.0,
    }
}

pub fn preset(name: &str) -> Result<ModelSpec> {
    let spec = match name.to_ascii_lowercase().as_str() {
        "model1" => ModelSpec::ArMa {
            ar: vec![0.8],
            ma: vec![],
        },
        "model2" => ModelSpec::ArMa {
            ar: vec![1.0, -0.7],
            ma: vec![0.3, 0.0, 2.0],
        },
        "model3" => ModelSpec::ChangepointAr {
            segments: vec![
                ArSegment {
                    until: 0.75,
                    ar: vec![1.5, -0.75],
                },
                ArSegment {
                    until: 1.0,
                    ar: vec![0.8],
                },
            ],
        },
        "model4" => ModelSpec::TvInnovationAr {
            ar: vec![0.8],
            sigma: model4_sigma(),
            time_scale: Some(512.0),
        },
        "model5" => ModelSpec::ChangepointAr {
            segments: vec![
                ArSegment {
                    until: 0.5,
                    ar: vec![0.8],
                },
                ArSegment {
                    until: 1.0,
                    ar: vec![0.6],
                },
            ],
        },
        "model6" => ModelSpec::ModulatedNoise {
            sigma: model6_sigma(),
        },
        other => {
            return Err(Error::InvalidInput(format!(
                "unknown model '{other}'; available presets: {}",
                PRESET_NAMES.join(", ")
            )))
        }
    };
    Ok(spec)
}
