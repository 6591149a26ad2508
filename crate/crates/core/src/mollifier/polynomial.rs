use std::fmt;

use crate::error::{Error, Result};

/// P(x) = Σ_{j=1}^{d} c_j x^j with P(1) = 1.
///
/// There is no constant coefficient, so P(0) = 0 holds by construction.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct MollifierPolynomial {
    coefficients: Vec<f64>,
}

pub(crate) const NORMALIZATION_TOLERANCE: f64 = 1e-12;

impl MollifierPolynomial {
    /// `coefficients[j - 1]` is c_j.
    pub fn new(coefficients: Vec<f64>) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(Error::InvalidParameter("polynomial needs at least one coefficient".into()));
        }
        if coefficients.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidParameter("polynomial coefficients must be finite".into()));
        }
        let at_one: f64 = coefficients.iter().sum();
        if (at_one - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return Err(Error::InvalidParameter(format!(
                "P(1) must equal 1, got {at_one}"
            )));
        }
        Ok(Self { coefficients })
    }

    /// P(x) = x.
    pub fn linear() -> Self {
        Self {
            coefficients: vec![1.0],
        }
    }

    /// P(x) = −ϑx² + (1+ϑ)x.
    pub fn quadratic_for(theta: f64) -> Self {
        Self {
            coefficients: vec![1.0 + theta, -theta],
        }
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len()
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coefficients.iter().rev().fold(0.0, |acc, c| (acc + c) * x)
    }

    pub fn derivative(&self, x: f64) -> f64 {
        self.coefficients
            .iter()
            .enumerate()
            .rev()
            .fold(0.0, |acc, (i, c)| acc * x + (i + 1) as f64 * c)
    }

    /// ∫₀¹ P = Σ c_j/(j+1).
    pub fn integral(&self) -> f64 {
        self.terms().map(|(j, c)| c / (j + 1.0)).sum()
    }

    /// ∫₀¹ P² = Σ c_i c_j/(i+j+1).
    pub fn integral_of_square(&self) -> f64 {
        self.terms()
            .flat_map(|(i, ci)| self.terms().map(move |(j, cj)| ci * cj / (i + j + 1.0)))
            .sum()
    }

    /// ∫₀¹ P′² = Σ ij c_i c_j/(i+j−1).
    pub fn integral_of_derivative_square(&self) -> f64 {
        self.terms()
            .flat_map(|(i, ci)| self.terms().map(move |(j, cj)| i * j * ci * cj / (i + j - 1.0)))
            .sum()
    }

    /// max |P| on [0, 1], sampled on a grid of 1025 points.
    pub fn max_abs_on_unit_interval(&self) -> f64 {
        (0..=1024)
            .map(|i| self.eval(i as f64 / 1024.0).abs())
            .fold(0.0, f64::max)
    }

    fn terms(&self) -> impl Iterator<Item = (f64, f64)> + Clone + '_ {
        self.coefficients
            .iter()
            .enumerate()
            .map(|(i, &c)| ((i + 1) as f64, c))
    }
}

impl fmt::Display for MollifierPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coefficients.iter().map(|c| format!("{c}")).collect();
        f.write_str(&parts.join(";"))
    }
}
