//! Composite trapezoid rule on rectangles.

use std::ops::{Add, Mul};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Values the trapezoid rule can integrate.
pub trait Integrand: Copy + Add<Output = Self> + Mul<f64, Output = Self> {
    fn zero() -> Self;
    fn is_finite_value(&self) -> bool;
    fn magnitude(&self) -> f64;
}

impl Integrand for f64 {
    fn zero() -> Self {
        0.0
    }
    fn is_finite_value(&self) -> bool {
        self.is_finite()
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl Integrand for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn is_finite_value(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

/// A closed interval split into `intervals` equal panels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub lower: f64,
    pub upper: f64,
    pub intervals: usize,
}

impl Axis {
    pub fn new(lower: f64, upper: f64, intervals: usize) -> Self {
        Self {
            lower,
            upper,
            intervals,
        }
    }

    fn node(&self, i: usize) -> f64 {
        if i == self.intervals {
            self.upper
        } else {
            self.lower + (self.upper - self.lower) * i as f64 / self.intervals as f64
        }
    }

    fn step(&self) -> f64 {
        (self.upper - self.lower) / self.intervals as f64
    }
}

/// Result of a 2-d trapezoid integration.
///
/// `error_estimate` is |I_h − I_{2h}|, where I_{2h} reuses every second
/// node of the same grid.
#[derive(Debug, Clone, Copy)]
pub struct Quadrature<T> {
    pub value: T,
    pub error_estimate: f64,
}

pub const MIN_INTERVALS: usize = 16;

/// Composite trapezoid rule for ∫∫ f(x, y) dy dx over `x_axis` × `y_axis`.
///
/// Both axes need an even number of panels, at least [`MIN_INTERVALS`].
pub fn trapezoid_2d<T, F>(f: F, x_axis: Axis, y_axis: Axis) -> Result<Quadrature<T>>
where
    T: Integrand,
    F: Fn(f64, f64) -> T,
{
    for (name, axis) in [("x", &x_axis), ("y", &y_axis)] {
        if axis.intervals < MIN_INTERVALS || axis.intervals % 2 != 0 {
            return Err(Error::InvalidInput(format!(
                "{name}-grid needs an even number of panels >= {MIN_INTERVALS}, got {}",
                axis.intervals
            )));
        }
        if !(axis.lower.is_finite() && axis.upper.is_finite()) {
            return Err(Error::InvalidInput(format!("{name}-axis bounds must be finite")));
        }
    }
    let (nx, ny) = (x_axis.intervals, y_axis.intervals);
    let weight = |i: usize, n: usize| if i == 0 || i == n { 0.5 } else { 1.0 };

    let mut fine = T::zero();
    let mut coarse = T::zero();
    for i in 0..=nx {
        let x = x_axis.node(i);
        for j in 0..=ny {
            let y = y_axis.node(j);
            let v = f(x, y);
            if !v.is_finite_value() {
                return Err(Error::NonFinite {
                    location: format!("integrand at ({x}, {y})"),
                });
            }
            fine = fine + v * (weight(i, nx) * weight(j, ny));
            if i % 2 == 0 && j % 2 == 0 {
                coarse = coarse + v * (weight(i / 2, nx / 2) * weight(j / 2, ny / 2));
            }
        }
    }
    let area = x_axis.step() * y_axis.step();
    let value = fine * area;
    let coarse = coarse * (4.0 * area);
    Ok(Quadrature {
        value,
        error_estimate: (value + coarse * -1.0).magnitude(),
    })
}

/// One-dimensional composite trapezoid rule with `intervals` panels.
pub fn trapezoid_1d<T, F>(f: F, axis: Axis) -> Result<T>
where
    T: Integrand,
    F: Fn(f64) -> T,
{
    if axis.intervals == 0 {
        return Err(Error::InvalidInput("trapezoid rule needs >= 1 panel".into()));
    }
    let n = axis.intervals;
    let mut acc = T::zero();
    for i in 0..=n {
        let x = axis.node(i);
        let v = f(x);
        if !v.is_finite_value() {
            return Err(Error::NonFinite {
                location: format!("integrand at {x}"),
            });
        }
        let w = if i == 0 || i == n { 0.5 } else { 1.0 };
        acc = acc + v * w;
    }
    Ok(acc * axis.step())
}
