use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::euler_maclaurin::zeta_em;
use super::theta::rs_theta;
use super::ZeroList;
use crate::error::{Error, Result};

/// arg ζ(1/2 + it), followed continuously from σ = 2 (where Re ζ > 0) along
/// the horizontal segment to σ = 1/2.
pub fn arg_zeta_on_line(t: f64) -> f64 {
    let z = |sigma: f64| zeta_em(Complex64::new(sigma, t));
    let mut sigma = 2.0;
    let mut prev = z(sigma);
    let mut arg = prev.arg();
    let mut step: f64 = 0.05;
    while sigma > 0.5 {
        let next_sigma = (sigma - step).max(0.5);
        let next = z(next_sigma);
        let change = (next / prev).arg();
        if change.abs() > 0.4 && step > 1e-6 {
            step *= 0.5;
            continue;
        }
        arg += change;
        sigma = next_sigma;
        prev = next;
        if change.abs() < 0.1 {
            step = (step * 1.5).min(0.1);
        }
    }
    arg
}

/// S(t) = arg ζ(1/2 + it)/π.
pub fn s_function(t: f64) -> f64 {
    arg_zeta_on_line(t) / PI
}

/// θ(t)/π + 1 + S(t); an integer (up to rounding) when t is not an ordinate.
pub fn riemann_von_mangoldt(t: f64) -> f64 {
    rs_theta(t) / PI + 1.0 + s_function(t)
}

/// θ(t)/π + 1 without the S(t) term.
pub fn smooth_count(t: f64) -> f64 {
    rs_theta(t) / PI + 1.0
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CountReport {
    pub height: f64,
    pub census: usize,
    pub formula_value: f64,
    pub formula: i64,
    pub agree: bool,
}

/// N(T) by census of the list and by the argument principle. Fails when the
/// two differ by 2 or more.
pub fn count_n(height: f64, zeros: &ZeroList) -> Result<CountReport> {
    if zeros.max_height() < height {
        return Err(Error::Census(format!(
            "zero list only covers t ≤ {}, asked for N({height})",
            zeros.max_height()
        )));
    }
    let census = zeros.count_up_to(height);
    let formula_value = if height < 1.0 { 0.0 } else { riemann_von_mangoldt(height) };
    let formula = formula_value.round() as i64;
    let gap = (census as i64 - formula).abs();
    if gap >= 2 {
        return Err(Error::Census(format!(
            "census {census} and formula {formula_value:.3} disagree at T = {height}"
        )));
    }
    Ok(CountReport {
        height,
        census,
        formula_value,
        formula,
        agree: gap == 0,
    })
}
