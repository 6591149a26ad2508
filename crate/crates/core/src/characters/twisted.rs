use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::{delta_term, e_frac, gauss_sum, primitive_characters, DeltaParams};
use crate::arith::ArithFnTable;
use crate::error::{Error, Result};
use crate::mollifier::MollifierSpec;
use crate::numbers::divisors;
use crate::sum::ComplexCompensatedSum;

/// Which of the two twisted sums is meant (ν = 1 or 2).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MomentIndex {
    First,
    Second,
}

impl TryFrom<u32> for MomentIndex {
    type Error = Error;

    fn try_from(nu: u32) -> Result<Self> {
        match nu {
            1 => Ok(Self::First),
            2 => Ok(Self::Second),
            _ => Err(Error::InvalidParameter(format!("ν must be 1 or 2, got {nu}"))),
        }
    }
}

/// ⌊kT/2π⌋, nudged so that exact integer cutoffs are not lost to rounding.
fn cutoff(k: u64, height: f64) -> u64 {
    let x = k as f64 * height / (2.0 * PI);
    (x * (1.0 + 1e-12)).floor() as u64
}

/// Largest m for which a_ν(m) is read: ⌊yT/2π⌋.
pub fn required_coefficients(spec: &MollifierSpec) -> usize {
    cutoff(spec.max_k() as u64, spec.height()) as usize
}

fn check_inputs(nu: u32, spec: &MollifierSpec, a: &ArithFnTable) -> Result<()> {
    MomentIndex::try_from(nu)?;
    a.require(required_coefficients(spec))
}

/// Σ_{k≤y} b(k)/k Σ_{m≤kT/2π} a_ν(m) e(−m/k), k ascending.
pub fn m_nu_direct(nu: u32, spec: &MollifierSpec, a: &ArithFnTable) -> Result<Complex64> {
    check_inputs(nu, spec, a)?;
    let mut total = ComplexCompensatedSum::new();
    for k in 1..=spec.max_k() as u64 {
        let b = spec.coefficient(k);
        if b == 0.0 {
            continue;
        }
        let inner: ComplexCompensatedSum = (1..=cutoff(k, spec.height()))
            .map(|m| a.get(m as usize) * e_frac(-(m as i64), k))
            .collect();
        total.add(inner.value() * (b / k as f64));
    }
    Ok(total.value())
}

/// The character form: for each q ≤ y the contribution
/// Σ*_ψ τ(ψ̄) Σ_{k≤y/q} b(kq)/(kq) Σ_{d|k} δ(q,kq,d,ψ) Σ_{m≤kqT/2πd} a_ν(md)ψ(m).
///
/// Returned as (q, contribution) pairs in ascending q.
pub fn m_nu_by_modulus(nu: u32, spec: &MollifierSpec, a: &ArithFnTable) -> Result<Vec<(u64, Complex64)>> {
    check_inputs(nu, spec, a)?;
    let y = spec.max_k() as u64;
    (1..=y)
        .into_par_iter()
        .map(|q| modulus_contribution(q, spec, a).map(|c| (q, c)))
        .collect()
}

/// Sum of [`m_nu_by_modulus`] in ascending q.
pub fn m_nu_rearranged(nu: u32, spec: &MollifierSpec, a: &ArithFnTable) -> Result<Complex64> {
    Ok(m_nu_by_modulus(nu, spec, a)?
        .into_iter()
        .map(|(_, c)| c)
        .collect::<ComplexCompensatedSum>()
        .value())
}

fn modulus_contribution(q: u64, spec: &MollifierSpec, a: &ArithFnTable) -> Result<Complex64> {
    let y = spec.max_k() as u64;
    let mut total = ComplexCompensatedSum::new();
    for psi in primitive_characters(q) {
        let tau = gauss_sum(&psi.conj()).value;
        let mut over_k = ComplexCompensatedSum::new();
        for k in 1..=y / q {
            let b = spec.coefficient(k * q);
            if b == 0.0 {
                // squarefree support of b also removes every k sharing a factor with q
                continue;
            }
            let limit = cutoff(k * q, spec.height());
            let mut over_d = ComplexCompensatedSum::new();
            for d in divisors(k) {
                let delta = delta_term(DeltaParams { q, k, d }, &psi)?;
                if delta.norm_sqr() == 0.0 {
                    continue;
                }
                let inner: ComplexCompensatedSum = (1..=limit / d)
                    .map(|m| psi.value(m as i64) * a.get((m * d) as usize))
                    .collect();
                over_d.add(delta * inner.value());
            }
            over_k.add(over_d.value() * (b / (k * q) as f64));
        }
        total.add(tau * over_k.value());
    }
    Ok(total.value())
}
