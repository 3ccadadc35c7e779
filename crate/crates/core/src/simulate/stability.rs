use num_complex::Complex64;

/// Roots of the monic polynomial λ^p − a₁λ^{p−1} − … − a_p, by
/// Durand–Kerner iteration. These are the reciprocals of the roots of the
/// AR polynomial 1 − a₁z − … − a_p z^p.
pub fn reciprocal_roots(ar: &[f64]) -> Vec<Complex64> {
    let p = ar.iter().rposition(|&a| a != 0.0).map_or(0, |i| i + 1);
    if p == 0 {
        return Vec::new();
    }
    let coef: Vec<f64> = std::iter::once(1.0).chain(ar[..p].iter().map(|a| -a)).collect();
    let eval = |z: Complex64| coef.iter().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c);

    let radius = 1.0 + ar[..p].iter().fold(0.0_f64, |m, a| m.max(a.abs()));
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..p).map(|k| seed.powu(k as u32) * radius).collect();

    for _ in 0..2000 {
        let mut shift = 0.0_f64;
        for i in 0..p {
            let denom = roots
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(Complex64::new(1.0, 0.0), |acc, (_, r)| acc * (roots[i] - r));
            if denom.norm() == 0.0 {
                roots[i] += Complex64::new(1e-8, 1e-8);
                shift = f64::INFINITY;
                continue;
            }
            let step = eval(roots[i]) / denom;
            roots[i] -= step;
            shift = shift.max(step.norm());
        }
        if shift < 1e-15 {
            break;
        }
    }
    roots
}

/// Smallest modulus among the roots of 1 − a₁z − … − a_p z^p
/// (infinite when the polynomial is constant). The AR recursion is
/// stationary exactly when this exceeds 1.
pub fn min_root_modulus(ar: &[f64]) -> f64 {
    let largest = reciprocal_roots(ar)
        .iter()
        .map(|r| r.norm())
        .fold(0.0_f64, f64::max);
    if largest == 0.0 {
        f64::INFINITY
    } else {
        1.0 / largest
    }
}
