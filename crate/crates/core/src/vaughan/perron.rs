use std::f64::consts::PI;
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quadrature::GaussLegendre;
use crate::sum::CompensatedSum;

fn panel_rule() -> &'static GaussLegendre {
    static RULE: OnceLock<GaussLegendre> = OnceLock::new();
    RULE.get_or_init(|| GaussLegendre::new(16))
}

/// (1/2πi)∫_{δ−iU}^{δ+iU} (M₀/m)^s ds/s with M₀ = M + 1/2, δ = 1/log M.
///
/// With s = δ + it the odd part of the integrand cancels, leaving the real
/// value (x^δ/π)∫₀^U (δ cos λt + t sin λt)/(δ² + t²) dt, x = M₀/m, λ = log x.
pub fn perron_truncation(big_m: u64, u: f64, m: u64) -> Result<f64> {
    if big_m < 2 || m == 0 {
        return Err(Error::InvalidParameter(format!(
            "need M ≥ 2 and m ≥ 1, got M = {big_m}, m = {m}"
        )));
    }
    if !(u > 0.0 && u.is_finite()) {
        return Err(Error::InvalidParameter(format!("U must be positive, got {u}")));
    }
    let m0 = big_m as f64 + 0.5;
    assert!(m as f64 != m0, "m cannot equal the half-integer M + 1/2");
    let delta = 1.0 / (big_m as f64).ln();
    let x = m0 / m as f64;
    let lambda = x.ln();
    let integrand = |t: f64| (delta * (lambda * t).cos() + t * (lambda * t).sin()) / (delta * delta + t * t);

    // Panels resolve the peak near t = 0 and then half an oscillation each.
    let half_period = PI / lambda.abs();
    let rule = panel_rule();
    let mut acc = CompensatedSum::new();
    let mut t = 0.0;
    while t < u {
        let width = (0.5 * delta.max(t)).min(half_period);
        let next = (t + width).min(u);
        acc.add(rule.integrate(integrand, t, next));
        t = next;
    }
    Ok(x.powf(delta) / PI * acc.value())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PerronCheck {
    pub big_m: u64,
    pub u: f64,
    pub m: u64,
    pub value: f64,
    pub indicator: f64,
    pub deviation: f64,
    /// 5M/U.
    pub bound: f64,
    pub pass: bool,
}

/// Compares the truncated integral with [m ≤ M].
pub fn perron_check(big_m: u64, u: f64, m: u64) -> Result<PerronCheck> {
    let value = perron_truncation(big_m, u, m)?;
    let indicator = if m <= big_m { 1.0 } else { 0.0 };
    let deviation = (value - indicator).abs();
    let bound = 5.0 * big_m as f64 / u;
    Ok(PerronCheck {
        big_m,
        u,
        m,
        value,
        indicator,
        deviation,
        bound,
        pass: deviation <= bound,
    })
}
