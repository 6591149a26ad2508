use num_complex::Complex64;

use super::{e_frac, DirichletCharacter};
use crate::sum::ComplexCompensatedSum;

#[derive(Debug, Clone, PartialEq)]
pub struct GaussSumResult {
    pub modulus: u64,
    pub primitive: bool,
    pub value: Complex64,
    /// ||τ(χ)| − √q|; zero up to rounding when χ is primitive.
    pub modulus_sqrt_deviation: f64,
}

/// τ(χ) = Σ_{a mod q} χ(a) e(a/q).
pub fn gauss_sum(chi: &DirichletCharacter) -> GaussSumResult {
    let value = twisted_gauss_sum(chi, 1);
    let q = chi.modulus();
    GaussSumResult {
        modulus: q,
        primitive: chi.is_primitive(),
        value,
        modulus_sqrt_deviation: (value.norm() - (q as f64).sqrt()).abs(),
    }
}

/// Σ_{a mod q} χ(a) e(an/q).
pub fn twisted_gauss_sum(chi: &DirichletCharacter, n: i64) -> Complex64 {
    let q = chi.modulus();
    (0..q as i64)
        .map(|a| chi.value(a) * e_frac(a * n, q))
        .collect::<ComplexCompensatedSum>()
        .value()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::enumerate_characters;

    #[test]
    fn small_cases() {
        let one = &enumerate_characters(1)[0];
        assert!((gauss_sum(one).value - 1.0).norm() < 1e-15);
        let chi3 = enumerate_characters(3).into_iter().find(|c| !c.is_trivial()).unwrap();
        let g = gauss_sum(&chi3);
        assert!((g.value - Complex64::new(0.0, 3f64.sqrt())).norm() < 1e-14);
        assert!(g.modulus_sqrt_deviation < 1e-14);
    }
}
