//! Oracles shared by the integration tests. Each one is computed from first
//! principles and does not call into the library routine it checks.
#![allow(dead_code)]

use std::f64::consts::PI;

/// ln Γ(k/2) by the exact recurrence from Γ(1) = 1 and Γ(1/2) = √π.
pub fn ln_gamma_half(k: u32) -> f64 {
    let (mut a, mut acc) = if k.is_multiple_of(2) {
        (1.0, 0.0)
    } else {
        (0.5, 0.5 * PI.ln())
    };
    while a < k as f64 / 2.0 {
        acc += a.ln();
        a += 1.0;
    }
    acc
}

/// P(χ²_k > x) by Simpson's rule after substituting t = s², which removes
/// the t^{k/2−1} singularity at the origin for k = 1.
pub fn chisq_sf_quadrature(x: f64, k: u32) -> f64 {
    let kf = k as f64;
    let log_norm = (kf / 2.0) * 2f64.ln() + ln_gamma_half(k) - 2f64.ln();
    let density = |s: f64| {
        if s == 0.0 {
            return if k == 1 { (-log_norm).exp() } else { 0.0 };
        }
        ((kf - 1.0) * s.ln() - s * s / 2.0 - log_norm).exp()
    };
    let lower = x.sqrt();
    let upper = lower.max((kf - 1.0).max(0.0).sqrt()) + 40.0;
    let n = 80_000;
    let h = (upper - lower) / n as f64;
    let mut acc = density(lower) + density(upper);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * density(lower + i as f64 * h);
    }
    acc * h / 3.0
}

/// (x, dof) pairs covering both tails and the body for small and large dof.
pub const CHISQ_PAIRS: [(f64, u32); 20] = [
    (0.5, 1),
    (3.841_458_820_694_124, 1),
    (1.0, 2),
    (5.991_464_547_107_979, 2),
    (2.0, 3),
    (7.814_727_903_251_178, 3),
    (0.1, 4),
    (9.487_729_036_781_154, 4),
    (3.0, 5),
    (11.070_497_693_516_351, 5),
    (2.0, 8),
    (2.66, 8),
    (18.307_038_053_275_146, 10),
    (30.0, 10),
    (10.0, 20),
    (31.410_432_844_230_918, 20),
    (43.772_971_825_742_19, 30),
    (60.0, 30),
    (40.0, 50),
    (67.504_806_549_541_4, 50),
];

/// Naive O(T²) DFT with the canonical normalization, frequency k = 1..T.
pub fn naive_dft(x: &[f64]) -> Vec<(f64, f64)> {
    let n = x.len();
    let norm = 1.0 / (2.0 * PI * n as f64).sqrt();
    (1..=n)
        .map(|k| {
            let mut re = 0.0;
            let mut im = 0.0;
            for (t, &v) in x.iter().enumerate() {
                let angle = 2.0 * PI * (((t + 1) * k) % n) as f64 / n as f64;
                re += v * angle.cos();
                im += v * angle.sin();
            }
            (re * norm, im * norm)
        })
        .collect()
}

/// Deterministic pseudo-random values in (−1, 1) from a 64-bit LCG, for
/// oracles that must not depend on the library's generator.
pub fn lcg_values(seed: u64, n: usize) -> Vec<f64> {
    let mut state = seed.wrapping_mul(6_364_136_223_846_793_005).wrapping_add(1);
    (0..n)
        .map(|_| {
            state = state
                .wrapping_mul(6_364_136_223_846_793_005)
                .wrapping_add(1_442_695_040_888_963_407);
            ((state >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
        })
        .collect()
}
