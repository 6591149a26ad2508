//! Closed-form main-term factors. Each is the bracket multiplying T𝓛²/2π
//! (first moment) or T𝓛³/2π (second moment).
//!
//! ϑ = 1/2 is accepted: every formula is continuous there, and the limiting
//! constants are obtained by substitution.

use super::{kappa_star_lower, MollifierPolynomial, MollifierSpec};
use crate::error::{Error, Result};

fn check_theta(theta: f64, allow_zero: bool) -> Result<()> {
    let lower_ok = if allow_zero { theta >= 0.0 } else { theta > 0.0 };
    if lower_ok && theta <= 0.5 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "theta must lie in {}0, 1/2], got {theta}",
            if allow_zero { "[" } else { "(" }
        )))
    }
}

/// 1/2 + ϑ∫P.
pub fn predicted_s1_factor(theta: f64, poly: &MollifierPolynomial) -> Result<f64> {
    check_theta(theta, true)?;
    Ok(0.5 + theta * poly.integral())
}

/// 1/3 + ϑ∫P + ϑ²(∫P)² + (1/12ϑ)∫P′².
pub fn predicted_s2_factor(theta: f64, poly: &MollifierPolynomial) -> Result<f64> {
    check_theta(theta, false)?;
    let i = poly.integral();
    Ok(1.0 / 3.0
        + theta * i
        + theta * theta * i * i
        + poly.integral_of_derivative_square() / (12.0 * theta))
}

/// 1/2 − ϑ∫P, the q = 1 main term of the first twisted sum.
pub fn predicted_m11_factor(theta: f64, poly: &MollifierPolynomial) -> Result<f64> {
    check_theta(theta, true)?;
    Ok(0.5 - theta * poly.integral())
}

/// 1/12 − (ϑ/2)∫P + (3ϑ/2)∫P² − (ϑ²/2)(∫P)² − (1/24ϑ)∫P′².
pub fn predicted_m21_factor(theta: f64, poly: &MollifierPolynomial) -> Result<f64> {
    check_theta(theta, false)?;
    let i = poly.integral();
    Ok(1.0 / 12.0 - 0.5 * theta * i + 1.5 * theta * poly.integral_of_square()
        - 0.5 * theta * theta * i * i
        - poly.integral_of_derivative_square() / (24.0 * theta))
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct MainTermReport {
    pub s1_factor: f64,
    pub s2_factor: f64,
    pub m11_factor: f64,
    pub m21_factor: f64,
    pub kappa_star: f64,
}

impl MainTermReport {
    pub fn compute(theta: f64, poly: &MollifierPolynomial) -> Result<Self> {
        let s1_factor = predicted_s1_factor(theta, poly)?;
        let s2_factor = predicted_s2_factor(theta, poly)?;
        Ok(Self {
            s1_factor,
            s2_factor,
            m11_factor: predicted_m11_factor(theta, poly)?,
            m21_factor: predicted_m21_factor(theta, poly)?,
            kappa_star: kappa_star_lower(s1_factor, s2_factor)?,
        })
    }

    pub fn for_spec(spec: &MollifierSpec) -> Result<Self> {
        Self::compute(spec.theta(), spec.poly())
    }
}
