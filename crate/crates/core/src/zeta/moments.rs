use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::euler_maclaurin::zeta_em;
use super::hardy::hardy_z;
use super::theta::rs_theta;
use super::ZeroList;
use crate::error::{Error, Result};
use crate::mollifier::{predicted_s1_factor, predicted_s2_factor, MollifierSpec};
use crate::sum::{CompensatedSum, ComplexCompensatedSum};

/// |Z′(γ)| below this is reported as a possible multiple zero.
pub const MULTIPLE_ZERO_THRESHOLD: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZetaPrime {
    pub ordinate: f64,
    pub value: Complex64,
    /// Z′(γ).
    pub z_prime: f64,
    pub possible_multiple: bool,
}

fn difference_step(gamma: f64) -> f64 {
    1e-5 * gamma.max(1.0).powf(-1.0 / 3.0)
}

/// ζ′(1/2 + iγ) = −i Z′(γ) e^{−iθ(γ)}, with Z′ by a central difference.
pub fn zeta_prime_at_zero(gamma: f64) -> ZetaPrime {
    let h = difference_step(gamma);
    let z_prime = (hardy_z(gamma + h) - hardy_z(gamma - h)) / (2.0 * h);
    let value = Complex64::new(0.0, -1.0) * Complex64::from_polar(z_prime, -rs_theta(gamma));
    ZetaPrime {
        ordinate: gamma,
        value,
        z_prime,
        possible_multiple: z_prime.abs() < MULTIPLE_ZERO_THRESHOLD,
    }
}

/// ζ′(1/2 + iγ) by differencing ζ itself along the line (Euler–Maclaurin),
/// independent of Z and θ.
pub fn zeta_prime_direct(gamma: f64) -> Complex64 {
    let h = difference_step(gamma);
    let up = zeta_em(Complex64::new(0.5, gamma + h));
    let down = zeta_em(Complex64::new(0.5, gamma - h));
    // d/dt ζ(1/2 + it) = iζ′.
    (up - down) / Complex64::new(0.0, 2.0 * h)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MomentResult {
    pub height: f64,
    pub theta: f64,
    pub length: f64,
    pub poly: String,
    pub s1: Complex64,
    pub s2: f64,
    pub n_t: usize,
    pub kappa_bound: f64,
    /// (T𝓛²/2π)·S1-factor, when ϑ is in the factor's domain.
    pub predicted_s1: Option<f64>,
    /// (T𝓛³/2π)·S2-factor.
    pub predicted_s2: Option<f64>,
    pub ratio_s1: Option<f64>,
    pub ratio_s2: Option<f64>,
    pub possible_multiple_zeros: usize,
}

/// S1 = Σ B(ρ)ζ′(ρ) and S2 = Σ |B(ρ)ζ′(ρ)|² over 0 < γ ≤ T, ascending γ.
pub fn compute_moments(height: f64, spec: &MollifierSpec, zeros: &ZeroList) -> Result<MomentResult> {
    if zeros.max_height() < height {
        return Err(Error::Census(format!(
            "zero list covers t ≤ {} but the moments need t ≤ {height}",
            zeros.max_height()
        )));
    }
    let n_t = zeros.count_up_to(height);
    let ordinates = &zeros.ordinates()[..n_t];
    let terms: Vec<(f64, f64, f64)> = (1..=spec.max_k() as u64)
        .map(|k| (k as f64, spec.coefficient(k)))
        .filter(|&(_, b)| b != 0.0)
        .map(|(k, b)| (k.ln(), b, k.sqrt()))
        .collect();

    let products: Vec<(Complex64, bool)> = ordinates
        .par_iter()
        .map(|&gamma| {
            let zp = zeta_prime_at_zero(gamma);
            let b: Complex64 = terms
                .iter()
                .map(|&(ln_k, b, sqrt_k)| Complex64::from_polar(b / sqrt_k, -gamma * ln_k))
                .sum();
            (b * zp.value, zp.possible_multiple)
        })
        .collect();

    let s1 = products.iter().map(|p| p.0).collect::<ComplexCompensatedSum>().value();
    let s2 = products.iter().map(|p| p.0.norm_sqr()).collect::<CompensatedSum>().value();
    let possible_multiple_zeros = products.iter().filter(|p| p.1).count();

    let l = (height / (2.0 * PI)).ln();
    let base = height / (2.0 * PI);
    let theta = spec.theta();
    let predicted_s1 = predicted_s1_factor(theta, spec.poly()).ok().map(|f| base * l * l * f);
    let predicted_s2 = predicted_s2_factor(theta, spec.poly()).ok().map(|f| base * l * l * l * f);
    let kappa_bound = if s2 > 0.0 && n_t > 0 {
        s1.norm_sqr() / (s2 * n_t as f64)
    } else {
        0.0
    };
    Ok(MomentResult {
        height,
        theta,
        length: spec.length(),
        poly: spec.poly().to_string(),
        s1,
        s2,
        n_t,
        kappa_bound,
        predicted_s1,
        predicted_s2,
        ratio_s1: predicted_s1.map(|p| s1.re / p),
        ratio_s2: predicted_s2.map(|p| s2 / p),
        possible_multiple_zeros,
    })
}

/// |S1|²/(S2·N_T).
pub fn empirical_kappa_bound(result: &MomentResult) -> Result<f64> {
    if !(result.s2 > 0.0) {
        return Err(Error::Degenerate("S2 = 0: the bound is undefined".into()));
    }
    if result.n_t == 0 {
        return Err(Error::Degenerate("no zeros up to T".into()));
    }
    Ok(result.s1.norm_sqr() / (result.s2 * result.n_t as f64))
}
