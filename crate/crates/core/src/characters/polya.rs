use super::DirichletCharacter;
use crate::error::{Error, Result};
use crate::numbers::gcd;
use crate::sum::ComplexCompensatedSum;

/// max_{Y′≤Y} |Σ_{h≤Y′} χ(h)|.
pub fn polya_vinogradov_max(chi: &DirichletCharacter, limit: u64) -> Result<f64> {
    coprime_partial_sum_max(chi, limit, 1)
}

/// max_{Y′≤Y} |Σ_{h≤Y′, (h,D)=1} χ(h)|.
pub fn coprime_partial_sum_max(chi: &DirichletCharacter, limit: u64, coprime_to: u64) -> Result<f64> {
    if chi.is_trivial() {
        return Err(Error::InvalidParameter(
            "partial sums of the trivial character are unbounded".into(),
        ));
    }
    if coprime_to == 0 {
        return Err(Error::InvalidParameter("D must be positive".into()));
    }
    let mut acc = ComplexCompensatedSum::new();
    let mut best: f64 = 0.0;
    for h in 1..=limit {
        if gcd(h, coprime_to) == 1 {
            acc.add(chi.value(h as i64));
            best = best.max(acc.value().norm());
        }
    }
    Ok(best)
}

/// √q·log q.
pub fn polya_vinogradov_bound(modulus: u64) -> f64 {
    let q = modulus as f64;
    q.sqrt() * q.ln()
}
