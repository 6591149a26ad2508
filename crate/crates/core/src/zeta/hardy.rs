use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

use super::euler_maclaurin::zeta_em;
use super::theta::rs_theta;

/// Below this height Z is evaluated through Euler–Maclaurin.
pub const RIEMANN_SIEGEL_THRESHOLD: f64 = 200.0;

const CAUCHY_POINTS: usize = 64;
const CAUCHY_RADIUS: f64 = 0.5;

/// Ψ(p) = cos(2π(p² − p − 1/16)) / cos(2πp), an entire function.
fn psi(z: Complex64) -> Complex64 {
    let two_pi = 2.0 * PI;
    (two_pi * (z * z - z - 1.0 / 16.0)).cos() / (two_pi * z).cos()
}

/// Ψ, Ψ′, …, Ψ⁽¹²⁾ at real p by the Cauchy integral on a circle whose nodes
/// avoid the real axis (and with it the removable singularities).
fn psi_derivatives(p: f64) -> [f64; 13] {
    static ROOTS: OnceLock<Vec<Complex64>> = OnceLock::new();
    let roots = ROOTS.get_or_init(|| {
        (0..CAUCHY_POINTS)
            .map(|j| Complex64::from_polar(1.0, 2.0 * PI * (j as f64 + 0.5) / CAUCHY_POINTS as f64))
            .collect()
    });
    let samples: Vec<Complex64> = roots
        .iter()
        .map(|w| psi(Complex64::new(p, 0.0) + w * CAUCHY_RADIUS))
        .collect();
    let mut out = [0.0; 13];
    let mut factorial = 1.0;
    for (k, slot) in out.iter_mut().enumerate() {
        if k > 0 {
            factorial *= k as f64;
        }
        let mean: Complex64 = samples
            .iter()
            .zip(roots)
            .map(|(f, w)| f * w.powi(-(k as i32)))
            .sum::<Complex64>()
            / CAUCHY_POINTS as f64;
        *slot = mean.re * factorial / CAUCHY_RADIUS.powi(k as i32);
    }
    out
}

/// Riemann–Siegel coefficients C₀…C₄ at fractional part p.
fn rs_coefficients(p: f64) -> [f64; 5] {
    let d = psi_derivatives(p);
    let pi2 = PI * PI;
    let (pi4, pi6, pi8) = (pi2 * pi2, pi2 * pi2 * pi2, pi2 * pi2 * pi2 * pi2);
    [
        d[0],
        -d[3] / (96.0 * pi2),
        d[2] / (64.0 * pi2) + d[6] / (18432.0 * pi4),
        -d[1] / (64.0 * pi2) - d[5] / (3840.0 * pi4) - d[9] / (5_308_416.0 * pi6),
        d[0] / (128.0 * pi2)
            + 19.0 * d[4] / (24576.0 * pi4)
            + 11.0 * d[8] / (5_898_240.0 * pi6)
            + d[12] / (2_038_431_744.0 * pi8),
    ]
}

/// Z(t) by the Riemann–Siegel main sum with corrections C₀…C₄; t ≥ 2π.
pub fn riemann_siegel_z(t: f64) -> f64 {
    assert!(t >= 2.0 * PI, "Riemann–Siegel needs t ≥ 2π");
    let a = (t / (2.0 * PI)).sqrt();
    let n = a.floor() as u64;
    let theta = rs_theta(t);
    let mut main = 0.0;
    for k in (1..=n).rev() {
        let kf = k as f64;
        main += (theta - t * kf.ln()).cos() / kf.sqrt();
    }
    let c = rs_coefficients(a - n as f64);
    let inv_a = 1.0 / a;
    let mut corr = 0.0;
    for ck in c.iter().rev() {
        corr = corr * inv_a + ck;
    }
    let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
    2.0 * main + sign * inv_a.sqrt() * corr
}

/// e^{iθ(t)}ζ(1/2 + it) through Euler–Maclaurin; the imaginary part is the
/// rounding residue of a quantity that is real in exact arithmetic.
pub fn hardy_z_em(t: f64) -> Complex64 {
    Complex64::from_polar(1.0, rs_theta(t)) * zeta_em(Complex64::new(0.5, t))
}

/// Hardy's Z(t), real.
pub fn hardy_z(t: f64) -> f64 {
    if t.abs() < RIEMANN_SIEGEL_THRESHOLD {
        hardy_z_em(t).re
    } else {
        riemann_siegel_z(t)
    }
}

/// ζ(1/2 + it) = e^{−iθ(t)} Z(t).
pub fn zeta_critical(t: f64) -> Complex64 {
    Complex64::from_polar(hardy_z(t), -rs_theta(t))
}
