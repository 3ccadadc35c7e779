//! Monte Carlo checks of ĉ_T(r), the oracle c̃_T(r) and null calibration.

mod common;

use std::f64::consts::PI;

use dftstat::experiments::{rejection_rate, McConfig};
use dftstat::numerics::{gauss_stream, Complex64, RngStream};
use dftstat::simulate::{arma_spectrum, generate, preset, Curve, GeneratorConfig, ModelSpec};
use dftstat::stattest::{dft_cov_oracle, test_statistic, TestConfig};

fn white_noise() -> ModelSpec {
    ModelSpec::ArMa {
        ar: vec![],
        ma: vec![],
    }
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

#[test]
fn white_noise_lag_one_has_unit_component_variance() {
    let len = 1024;
    let config = TestConfig::consecutive(1);
    let total: f64 = (0..500)
        .map(|i| {
            let x = gauss_stream(&RngStream::new(41, i), len);
            let (cov, _) = config.covariances(&x).unwrap();
            len as f64 * cov.values[0].norm_sqr()
        })
        .sum();
    let mean = total / 500.0;
    assert!((mean - 2.0).abs() <= 0.2, "mean T|c(1)|^2 = {mean}");
}

#[test]
fn modulated_noise_oracle_covariance() {
    // σ(u) = 1 + cos(2πu)/2: ∫σ² = 9/8 and ∫σ² e^{−2πiu} = 1/2
    let len = 512;
    let spec = ModelSpec::ModulatedNoise {
        sigma: Curve::Harmonic {
            offset: 1.0,
            sin_amp: 0.0,
            cos_amp: 0.5,
            cycles: 1.0,
        },
    };
    let flat = vec![1.125 / (2.0 * PI); len];
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..500 {
        let x = generate(&spec, &GeneratorConfig::new(len, RngStream::new(42, i))).unwrap();
        acc += dft_cov_oracle(&x, 1, &flat).unwrap();
    }
    let mean = acc / 500.0;
    let expected = 0.5 / 1.125;
    assert!((mean.re - expected).abs() <= 0.02, "{mean}");
    assert!(mean.im.abs() <= 0.02, "{mean}");
}

#[test]
fn white_noise_oracle_matches_direct_sum() {
    let x = common::lcg_values(5, 96);
    let j = common::naive_dft(&x);
    let flat = vec![1.0 / (2.0 * PI); x.len()];
    for r in [1usize, 7, 50] {
        let n = x.len();
        let (mut re, mut im) = (0.0, 0.0);
        for k in 0..n {
            let (a, b) = j[k];
            let (c, d) = j[(k + r) % n];
            // (a + ib)(c − id)
            re += a * c + b * d;
            im += b * c - a * d;
        }
        let scale = 2.0 * PI / n as f64;
        let got = dft_cov_oracle(&x, r, &flat).unwrap();
        assert!((got.re - re * scale).abs() < 1e-12, "r={r}");
        assert!((got.im - im * scale).abs() < 1e-12, "r={r}");
    }
}

#[test]
fn estimated_and_oracle_covariances_are_close_for_ar1() {
    let len = 2048;
    let spec = preset("model1").unwrap();
    let truth: Vec<f64> = (1..=len)
        .map(|k| arma_spectrum(&[0.8], &[], 2.0 * PI * k as f64 / len as f64))
        .collect();
    let config = TestConfig::consecutive(1).with_demean(false);
    let gaps: Vec<f64> = (0..200)
        .map(|i| {
            let x = generate(&spec, &GeneratorConfig::new(len, RngStream::new(43, i))).unwrap();
            let (cov, _) = config.covariances(&x).unwrap();
            let oracle = dft_cov_oracle(&x, 1, &truth).unwrap();
            (cov.values[0] - oracle).norm() * (len as f64).sqrt()
        })
        .collect();
    let m = median(gaps);
    assert!(m <= 0.5, "median sqrt(T)|c - c~| = {m}");
}

#[test]
fn null_covariances_do_not_grow_with_length() {
    let spec = preset("model1").unwrap();
    let config = TestConfig::consecutive(1);
    let med = |len: usize| {
        median(
            (0..200)
                .map(|i| {
                    let x = generate(&spec, &GeneratorConfig::new(len, RngStream::new(44, i)))
                        .unwrap();
                    config.covariances(&x).unwrap().0.values[0].norm() * (len as f64).sqrt()
                })
                .collect(),
        )
    };
    let (small, large) = (med(256), med(2048));
    assert!(large < 1.5 * small && small < 1.5 * large, "{small} vs {large}");
}

#[test]
fn white_noise_rejection_rate_is_nominal() {
    let cfg = McConfig::new(white_noise(), 512, TestConfig::consecutive(5), 1000).with_seed(45);
    let rate = rejection_rate(&cfg).unwrap().rejection_rate;
    assert!((0.030..=0.075).contains(&rate), "{rate}");
}

#[test]
fn white_noise_calibration_at_three_levels() {
    // 3σ binomial band around each level for N = 1000
    let base = McConfig::new(white_noise(), 512, TestConfig::consecutive(4), 1000).with_seed(46);
    for level in [0.01, 0.05, 0.10] {
        let rate = rejection_rate(&base.clone().with_level(level)).unwrap().rejection_rate;
        let band = 3.0 * (level * (1.0 - level) / 1000.0_f64).sqrt();
        assert!((rate - level).abs() <= band, "level {level}: {rate}");
    }
}

#[test]
fn statistic_and_p_value_ranges() {
    for i in 0..20 {
        let x = gauss_stream(&RngStream::new(47, i), 64 + i as usize);
        let r = test_statistic(&x, &TestConfig::consecutive(3)).unwrap();
        assert!(r.statistic >= 0.0);
        assert!((0.0..=1.0).contains(&r.p_value));
    }
}

#[test]
fn ar1_calibration_is_nominal_or_conservative() {
    // The smoothed spectrum of this AR(1) is biased near its peak at the
    // default bandwidth, which deflates the statistic a little; the test
    // must never over-reject.
    let base = McConfig::new(preset("model1").unwrap(), 512, TestConfig::consecutive(4), 1000)
        .with_seed(48);
    for level in [0.01, 0.05, 0.10] {
        let rate = rejection_rate(&base.clone().with_level(level)).unwrap().rejection_rate;
        let band = 3.0 * (level * (1.0 - level) / 1000.0_f64).sqrt();
        assert!(rate <= level + band, "level {level}: {rate}");
        if level < 0.1 {
            assert!(rate >= level - band, "level {level}: {rate}");
        }
    }
}
