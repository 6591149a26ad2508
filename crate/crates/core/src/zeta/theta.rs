use std::f64::consts::PI;

use num_complex::Complex64;

/// B_{2k}/(2k(2k−1)) for the Stirling series.
const STIRLING: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
];

/// log Γ(z) for Re z > 0, continuous in z (principal branch at large |z|).
pub fn ln_gamma(z: Complex64) -> Complex64 {
    assert!(z.re > 0.0, "ln_gamma needs Re z > 0");
    let mut shift = Complex64::new(0.0, 0.0);
    let mut w = z;
    while w.norm() < 20.0 {
        shift += w.ln();
        w += 1.0;
    }
    let inv = 1.0 / w;
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut p = inv;
    for c in STIRLING {
        series += p * c;
        p *= inv2;
    }
    (w - 0.5) * w.ln() - w + 0.5 * (2.0 * PI).ln() + series - shift
}

/// θ(t) = Im log Γ(1/4 + it/2) − (t/2) log π.
pub fn rs_theta(t: f64) -> f64 {
    ln_gamma(Complex64::new(0.25, 0.5 * t)).im - 0.5 * t * PI.ln()
}

/// The asymptotic expansion (t/2)log(t/2π) − t/2 − π/8 + 1/(48t) + ⋯,
/// accurate for large t.
pub fn rs_theta_asymptotic(t: f64) -> f64 {
    let inv = 1.0 / t;
    let inv2 = inv * inv;
    0.5 * t * (t / (2.0 * PI)).ln() - 0.5 * t - PI / 8.0
        + inv * (1.0 / 48.0 + inv2 * (7.0 / 5760.0 + inv2 * (31.0 / 80640.0 + inv2 * 127.0 / 430080.0)))
}

/// θ′(t), from the digamma asymptotics; used for Newton steps.
pub fn rs_theta_derivative(t: f64) -> f64 {
    let t = t.max(1.0);
    0.5 * (t / (2.0 * PI)).ln() - 1.0 / (48.0 * t * t)
}
