use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A real function of rescaled time u, used for time-varying standard
/// deviations and coefficients.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Curve {
    Constant {
        value: f64,
    },
    /// offset + sin_amp·sin(2π·cycles·u) + cos_amp·cos(2π·cycles·u)
    Harmonic {
        offset: f64,
        sin_amp: f64,
        cos_amp: f64,
        cycles: f64,
    },
    /// Right-continuous step function: the value of the last piece whose
    /// start is ≤ u. Starts are strictly increasing and the first is 0;
    /// u is clamped into [0, 1].
    Piecewise { pieces: Vec<Piece> },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Piece {
    pub start: f64,
    pub value: f64,
}

impl Curve {
    pub fn constant(value: f64) -> Self {
        Curve::Constant { value }
    }

    pub fn eval(&self, u: f64) -> f64 {
        match self {
            Curve::Constant { value } => *value,
            Curve::Harmonic {
                offset,
                sin_amp,
                cos_amp,
                cycles,
            } => {
                let a = 2.0 * PI * cycles * u;
                offset + sin_amp * a.sin() + cos_amp * a.cos()
            }
            Curve::Piecewise { pieces } => {
                let u = u.clamp(0.0, 1.0);
                pieces
                    .iter()
                    .take_while(|p| p.start <= u)
                    .last()
                    .map(|p| p.value)
                    .unwrap_or(pieces[0].value)
            }
        }
    }

    pub fn validate(&self) -> Result<()> {
        let finite = match self {
            Curve::Constant { value } => value.is_finite(),
            Curve::Harmonic {
                offset,
                sin_amp,
                cos_amp,
                cycles,
            } => [offset, sin_amp, cos_amp, cycles].iter().all(|v| v.is_finite()),
            Curve::Piecewise { pieces } => {
                if pieces.is_empty() {
                    return Err(Error::InvalidInput("piecewise curve has no pieces".into()));
                }
                if pieces[0].start != 0.0 {
                    return Err(Error::InvalidInput(
                        "first piece of a piecewise curve must start at 0".into(),
                    ));
                }
                if pieces.windows(2).any(|w| w[1].start <= w[0].start) {
                    return Err(Error::InvalidInput(
                        "piece starts must be strictly increasing".into(),
                    ));
                }
                if pieces.iter().any(|p| p.start > 1.0) {
                    return Err(Error::InvalidInput("piece starts must lie in [0, 1]".into()));
                }
                pieces.iter().all(|p| p.value.is_finite())
            }
        };
        if finite {
            Ok(())
        } else {
            Err(Error::InvalidInput("curve parameters must be finite".into()))
        }
    }

    /// Values on u = i/n, i = 0..=n.
    pub fn sample(&self, n: usize) -> Vec<f64> {
        (0..=n).map(|i| self.eval(i as f64 / n as f64)).collect()
    }
}
