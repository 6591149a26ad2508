use crate::error::{Error, Result};

/// Upper bound (1.3275) on the mean multiplicity Σm(ρ)/N(T), imported from the
/// pair-correlation literature; it is an input, not something computed here.
pub const MULTIPLICITY_MEAN_BOUND: f64 = 1.3275;

/// s1²/s2: the limiting value of |S₁|²/(S₂·N(T)).
pub fn kappa_star_lower(s1_factor: f64, s2_factor: f64) -> Result<f64> {
    if !(s2_factor > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "second-moment factor must be positive, got {s2_factor}"
        )));
    }
    Ok(s1_factor * s1_factor / s2_factor)
}

/// (5 + 2κ* − 1.3275)/6, the distinct-zero proportion implied by κ*.
pub fn kappa_d_lower(kappa_star: f64) -> Result<f64> {
    kappa_d_lower_with(kappa_star, MULTIPLICITY_MEAN_BOUND)
}

/// (5 + 2κ* − m)/6 for a supplied mean-multiplicity bound `m`.
pub fn kappa_d_lower_with(kappa_star: f64, multiplicity_bound: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&kappa_star) {
        return Err(Error::InvalidParameter(format!(
            "kappa* must lie in [0, 1], got {kappa_star}"
        )));
    }
    if !multiplicity_bound.is_finite() {
        return Err(Error::InvalidParameter("multiplicity bound must be finite".into()));
    }
    Ok((5.0 + 2.0 * kappa_star - multiplicity_bound) / 6.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theorem_constants() {
        let k = kappa_star_lower(19.0 / 24.0, 57.0 / 64.0).unwrap();
        assert!((k - 19.0 / 27.0).abs() < 1e-15);
        let kd = kappa_d_lower(k).unwrap();
        assert!(kd >= 0.84665);
        assert!((kd - 0.846_651_234_567_9).abs() < 1e-12);
    }

    #[test]
    fn montgomery_value() {
        let kd = kappa_d_lower(2.0 / 3.0).unwrap();
        assert!((kd - 0.834_305_555_555_555_6).abs() < 1e-14);
    }

    #[test]
    fn invalid_inputs() {
        assert!(kappa_star_lower(0.5, 0.0).is_err());
        assert!(kappa_star_lower(0.5, -1.0).is_err());
        assert!(kappa_d_lower(1.1).is_err());
        assert!(kappa_d_lower(-0.1).is_err());
    }

    #[test]
    fn linear_polynomial_at_half() {
        let k = kappa_star_lower(0.75, 0.8125).unwrap();
        assert!((k - 0.5625 / 0.8125).abs() < 1e-15);
    }
}
