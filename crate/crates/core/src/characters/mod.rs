//! Dirichlet characters, Gauss sums, the δ-factor, and the two forms of the
//! twisted coefficient sums 𝓜_ν (additive characters vs primitive
//! multiplicative characters).

mod delta;
mod gauss;
mod group;
mod polya;
mod twisted;

pub use delta::{delta_term, delta_trivial_bound, DeltaParams};
pub use gauss::{gauss_sum, twisted_gauss_sum, GaussSumResult};
pub use group::{enumerate_characters, primitive_character_count, primitive_characters, CharacterGroup, DirichletCharacter};
pub use polya::{coprime_partial_sum_max, polya_vinogradov_bound, polya_vinogradov_max};
pub use twisted::{m_nu_by_modulus, m_nu_direct, m_nu_rearranged, required_coefficients, MomentIndex};

use std::f64::consts::PI;

use num_complex::Complex64;

/// e(x) = exp(2πix).
#[inline]
pub fn e(x: f64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * x)
}

/// e(a/q) with the fraction reduced exactly before conversion.
#[inline]
pub fn e_frac(a: i64, q: u64) -> Complex64 {
    let r = a.rem_euclid(q as i64) as f64;
    Complex64::from_polar(1.0, 2.0 * PI * r / q as f64)
}
