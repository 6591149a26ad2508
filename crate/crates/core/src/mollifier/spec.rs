use std::f64::consts::PI;

use num_complex::Complex64;

use super::MollifierPolynomial;
use crate::arith::ArithFnTable;
use crate::error::{Error, Result};
use crate::numbers;

/// (ϑ, T, y = T^ϑ, P): everything the mollifier and its main terms depend on.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct MollifierSpec {
    theta: f64,
    height: f64,
    length: f64,
    poly: MollifierPolynomial,
}

impl MollifierSpec {
    /// Spec at height `T > 2π` with exponent `0 < ϑ < 1/2`; y = T^ϑ.
    pub fn new(theta: f64, height: f64, poly: MollifierPolynomial) -> Result<Self> {
        if !(theta > 0.0 && theta < 0.5) {
            return Err(Error::InvalidParameter(format!(
                "mollifier exponent must satisfy 0 < theta < 1/2, got {theta}"
            )));
        }
        if !(height > 2.0 * PI) || !height.is_finite() {
            return Err(Error::InvalidParameter(format!("height T must exceed 2π, got {height}")));
        }
        Ok(Self {
            theta,
            height,
            length: height.powf(theta),
            poly,
        })
    }

    /// Spec with an explicit mollifier length `y > 1` and any height `T > 1`;
    /// ϑ = log y / log T is derived, so y = T^ϑ still holds.
    ///
    /// Exact-identity checks run at tiny (y, T), where ϑ routinely leaves
    /// (0, 1/2); only [`MollifierSpec::new`] enforces that window.
    pub fn with_length(length: f64, height: f64, poly: MollifierPolynomial) -> Result<Self> {
        if !(length > 1.0) || !length.is_finite() {
            return Err(Error::InvalidParameter(format!("mollifier length y must exceed 1, got {length}")));
        }
        if !(height > 1.0) || !height.is_finite() {
            return Err(Error::InvalidParameter(format!("height T must exceed 1, got {height}")));
        }
        Ok(Self {
            theta: length.ln() / height.ln(),
            height,
            length,
            poly,
        })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// T.
    pub fn height(&self) -> f64 {
        self.height
    }

    /// y.
    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn poly(&self) -> &MollifierPolynomial {
        &self.poly
    }

    /// 𝓛 = log(T/2π).
    pub fn log_height(&self) -> f64 {
        (self.height / (2.0 * PI)).ln()
    }

    /// Largest k in the support of b, ⌊y⌋.
    pub fn max_k(&self) -> usize {
        self.length.floor() as usize
    }

    /// b(k) = μ(k)P(log(y/k)/log y) for k ≤ y, zero beyond.
    pub fn coefficient(&self, k: u64) -> f64 {
        assert!(k >= 1, "mollifier coefficients start at k = 1");
        if k as f64 > self.length {
            return 0.0;
        }
        let mu = numbers::mobius(k);
        if mu == 0 {
            return 0.0;
        }
        let x = if k == 1 {
            1.0
        } else {
            (self.length / k as f64).ln() / self.length.ln()
        };
        mu as f64 * self.poly.eval(x)
    }

    /// Table of b on `1..=limit` (zero beyond y).
    pub fn coefficient_table(&self, limit: usize) -> Result<ArithFnTable> {
        ArithFnTable::from_fn("b", limit, |k| self.coefficient(k as u64))
    }

    /// B(s) = Σ_{k≤y} b(k) k^{-s}.
    pub fn evaluate(&self, s: Complex64) -> Complex64 {
        (1..=self.max_k() as u64)
            .map(|k| (k, self.coefficient(k)))
            .filter(|&(_, b)| b != 0.0)
            .map(|(k, b)| b * (-s * (k as f64).ln()).exp())
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(theta: f64) -> MollifierSpec {
        MollifierSpec::new(theta, 1e4, MollifierPolynomial::quadratic_for(theta)).unwrap()
    }

    #[test]
    fn length_is_power_of_height() {
        let s = spec(0.3);
        assert!((s.length() / 1e4f64.powf(0.3) - 1.0).abs() < 1e-9);
        assert!(MollifierSpec::new(0.5, 1e4, MollifierPolynomial::linear()).is_err());
        assert!(MollifierSpec::new(0.0, 1e4, MollifierPolynomial::linear()).is_err());
        assert!(MollifierSpec::new(0.2, 6.0, MollifierPolynomial::linear()).is_err());
    }

    #[test]
    fn coefficient_spot_values() {
        let s = spec(0.3);
        assert!((s.coefficient(1) - 1.0).abs() < 1e-12);
        assert_eq!(s.coefficient(4), 0.0);
        assert_eq!(s.coefficient(s.max_k() as u64 + 1), 0.0);
        let y3 = MollifierSpec::with_length(3.0, 100.0, MollifierPolynomial::linear()).unwrap();
        assert_eq!(y3.coefficient(3), 0.0);
        assert!((y3.coefficient(2) + 1.5f64.ln() / 3f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn short_mollifier_is_identically_one() {
        let s = MollifierSpec::with_length(1.9, 100.0, MollifierPolynomial::quadratic_for(0.3)).unwrap();
        for z in [Complex64::new(0.5, 14.1), Complex64::new(2.0, -3.0)] {
            assert!((s.evaluate(z) - 1.0).norm() < 1e-15);
        }
    }

    #[test]
    fn three_term_polynomial_at_zero() {
        // Term-sum oracle: b(1) + b(2) + b(3) = 1 − P(log(3/2)/log 3) − P(0).
        let s = MollifierSpec::with_length(3.0, 100.0, MollifierPolynomial::linear()).unwrap();
        let oracle = 1.0 - 1.5f64.ln() / 3f64.ln() - 0.0;
        assert!((s.evaluate(Complex64::new(0.0, 0.0)).re - oracle).abs() < 1e-15);
    }
}
