use num_complex::Complex64;

use super::DirichletCharacter;
use crate::error::{Error, Result};
use crate::numbers::{divisors, gcd, mobius, totient};

/// Arguments of δ(q, kq, d, ψ).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeltaParams {
    pub q: u64,
    pub k: u64,
    pub d: u64,
}

impl DeltaParams {
    pub fn validate(&self, psi: &DirichletCharacter) -> Result<()> {
        let DeltaParams { q, k, d } = *self;
        if q == 0 || k == 0 || d == 0 {
            return Err(Error::Precondition("q, k and d must be positive".into()));
        }
        if psi.modulus() != q {
            return Err(Error::Precondition(format!(
                "character modulus {} differs from q = {q}",
                psi.modulus()
            )));
        }
        if k % d != 0 {
            return Err(Error::Precondition(format!("d = {d} must divide k = {k}")));
        }
        if gcd(k, q) != 1 {
            return Err(Error::Precondition(format!("k = {k} and q = {q} must be coprime")));
        }
        Ok(())
    }
}

/// δ(q,kq,d,ψ) = Σ_{l|(d,k)} μ(d/l)/φ(kq/l) · ψ̄(−k/l) ψ(d/l) μ(k/l).
///
/// ψ̄(−k/l) is evaluated as ψ̄ at the residue of −(k/l) mod q.
pub fn delta_term(params: DeltaParams, psi: &DirichletCharacter) -> Result<Complex64> {
    params.validate(psi)?;
    let DeltaParams { q, k, d } = params;
    let mut acc = Complex64::new(0.0, 0.0);
    for l in divisors(gcd(d, k)) {
        let mu = mobius(d / l) * mobius(k / l);
        if mu == 0 {
            continue;
        }
        let chi_d = psi.value((d / l) as i64);
        if chi_d.norm_sqr() == 0.0 {
            continue;
        }
        let chi_k = psi.value(-((k / l) as i64)).conj();
        acc += chi_k * chi_d * (mu as f64 / totient(k * q / l) as f64);
    }
    Ok(acc)
}

/// Σ_{l|d} 1/φ(kq/l): the trivial bound for |δ|.
pub fn delta_trivial_bound(params: DeltaParams) -> f64 {
    let DeltaParams { q, k, d } = params;
    divisors(d)
        .into_iter()
        .map(|l| 1.0 / totient(k * q / l) as f64)
        .sum()
}
