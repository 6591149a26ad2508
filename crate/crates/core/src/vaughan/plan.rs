use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};

/// η = 𝓛^A with 𝓛 = log(T/2π).
pub fn default_eta(height: f64, a: f64) -> f64 {
    (height / (2.0 * PI)).ln().powf(a)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FactorRoute {
    /// One factor M_i ≥ KQT/(DA₀) is taken as A on its own.
    SingleFactor(usize),
    /// A = Π_{j≤J} M_j with J maximal subject to A ≤ A₀.
    Greedy(usize),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DyadicPlan {
    pub k: f64,
    pub q: f64,
    pub d: f64,
    pub y: f64,
    pub height: f64,
    pub eta: f64,
    /// KQT/(πD).
    pub x: f64,
    /// max{yT^{1/2}, (KQT/D)^{2/3}}.
    pub a0: f64,
    pub lengths: [f64; 9],
    pub route: FactorRoute,
    pub a: f64,
    pub b: f64,
    /// Upper end of the V range, equal to U = T⁵.
    pub u: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PlanBounds {
    pub a_within_a0: bool,
    /// KQT/(DA₀).
    pub threshold: f64,
    /// B / (KQT/(DA₀))², meaningful when every M_i is below the threshold.
    pub b_ratio: f64,
    pub b_within: bool,
}

impl DyadicPlan {
    pub fn threshold(&self) -> f64 {
        self.k * self.q * self.height / (self.d * self.a0)
    }

    /// Checks A ≤ A₀ and B ≤ 16·max{A₀, (KQT/(DA₀))²}.
    pub fn bounds(&self) -> PlanBounds {
        let threshold = self.threshold();
        let square = threshold * threshold;
        PlanBounds {
            a_within_a0: self.a <= self.a0 * (1.0 + 1e-12),
            threshold,
            b_ratio: self.b / square,
            b_within: self.b <= 16.0 * self.a0.max(square),
        }
    }

    /// The split index J (for the single-factor route, the chosen slot + 1).
    pub fn split_index(&self) -> usize {
        match self.route {
            FactorRoute::SingleFactor(i) => i + 1,
            FactorRoute::Greedy(j) => j,
        }
    }
}

/// Builds the A/B factorization for one dyadic box (K, Q, D) and factor
/// lengths M₁..M₉.
pub fn build_dyadic_plan(
    k: f64,
    q: f64,
    d: f64,
    y: f64,
    height: f64,
    lengths: [f64; 9],
    eta: f64,
) -> Result<DyadicPlan> {
    for (name, v) in [("K", k), ("Q", q), ("D", d), ("y", y), ("T", height)] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::InvalidParameter(format!("{name} must be positive, got {v}")));
        }
    }
    if q <= eta {
        return Err(Error::Inadmissible(format!("Q = {q} does not exceed η = {eta}")));
    }
    if d > k {
        return Err(Error::Inadmissible(format!("D = {d} exceeds K = {k}")));
    }
    if k * q > 4.0 * y {
        return Err(Error::Inadmissible(format!("KQ = {} exceeds 4y = {}", k * q, 4.0 * y)));
    }
    let root = y * height.sqrt();
    for (i, &m) in lengths.iter().enumerate() {
        if !(m > 0.0 && m.is_finite()) {
            return Err(Error::InvalidParameter(format!("M{} must be positive, got {m}", i + 1)));
        }
        if m > root * (1.0 + 1e-12) {
            return Err(Error::Inadmissible(format!(
                "M{} = {m} exceeds yT^(1/2) = {root}",
                i + 1
            )));
        }
    }
    let kqt_d = k * q * height / d;
    let x = kqt_d / PI;
    let total: f64 = lengths.iter().product();
    if total > 512.0 * x {
        return Err(Error::Inadmissible(format!(
            "ΠM_i = {total} exceeds X = {x} beyond the dyadic slack"
        )));
    }
    let a0 = root.max(kqt_d.powf(2.0 / 3.0));
    let threshold = kqt_d / a0;

    let (route, a) = match lengths.iter().position(|&m| m >= threshold) {
        Some(i) => (FactorRoute::SingleFactor(i), lengths[i]),
        None => {
            let mut a = 1.0;
            let mut j = 0;
            while j < 9 && a * lengths[j] <= a0 {
                a *= lengths[j];
                j += 1;
            }
            (FactorRoute::Greedy(j), a)
        }
    };
    Ok(DyadicPlan {
        k,
        q,
        d,
        y,
        height,
        eta,
        x,
        a0,
        lengths,
        route,
        a,
        b: total / a,
        u: height.powi(5),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const T: f64 = 1e6;

    fn eta() -> f64 {
        default_eta(T, 2.0)
    }

    #[test]
    fn trivial_lengths() {
        let p = build_dyadic_plan(8.0, 256.0, 2.0, 1000.0, T, [1.0; 9], eta()).unwrap();
        assert_eq!((p.a, p.b), (1.0, 1.0));
        assert_eq!(p.route, FactorRoute::Greedy(9));
        assert!((p.x / (8.0 * 256.0 * T / (PI * 2.0)) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn single_long_factor() {
        let y = 1000.0;
        let mut m = [1.0; 9];
        m[0] = y * T.sqrt();
        let p = build_dyadic_plan(8.0, 256.0, 2.0, y, T, m, eta()).unwrap();
        assert_eq!((p.a, p.b), (m[0], 1.0));
        assert!(p.bounds().a_within_a0);
    }

    #[test]
    fn admissibility_failures_are_named() {
        let e = build_dyadic_plan(8.0, 10.0, 2.0, 1000.0, T, [1.0; 9], eta()).unwrap_err();
        assert!(e.to_string().contains('η'));
        let e = build_dyadic_plan(2.0, 256.0, 4.0, 1000.0, T, [1.0; 9], eta()).unwrap_err();
        assert!(e.to_string().contains("D = 4"));
        let e = build_dyadic_plan(64.0, 256.0, 4.0, 1000.0, T, [1.0; 9], eta()).unwrap_err();
        assert!(e.to_string().contains("KQ"));
    }
}
