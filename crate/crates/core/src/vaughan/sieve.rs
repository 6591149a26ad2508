use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::TABLE_BUDGET;
use crate::arith::{compute_a1, compute_a2, ArithFnTable};
use crate::characters::{primitive_characters, DirichletCharacter};
use crate::error::{Error, Result};
use crate::mollifier::MollifierSpec;
use crate::sum::{CompensatedSum, ComplexCompensatedSum};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SieveMonitorReport {
    pub q: u64,
    pub v: f64,
    pub h: usize,
    pub seed: Option<u64>,
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
}

/// Primitive characters with modulus in the band (Q/2, Q]; q = 1 never
/// belongs to a band.
pub fn primitive_band(q_top: u64) -> Vec<DirichletCharacter> {
    (q_top / 2 + 1..=q_top)
        .filter(|&q| q >= 2)
        .flat_map(primitive_characters)
        .collect()
}

/// Σ_{q∼Q} Σ*_ψ ∫_{−V}^{V} |Σ_{m≤H} h_m ψ(m) m^{−it}|² dt against
/// (Q²V + H) Σ|h_m|², with h_m = coefficients[m − 1].
pub fn hybrid_large_sieve_monitor(q_top: u64, v: f64, coefficients: &[Complex64]) -> Result<SieveMonitorReport> {
    let h = coefficients.len();
    if q_top == 0 || q_top > 30 || h == 0 || h > 500 || !(0.0..=50.0).contains(&v) {
        return Err(Error::Precondition(format!(
            "desk scale requires 1 ≤ Q ≤ 30, 1 ≤ H ≤ 500, 0 ≤ V ≤ 50 (got Q = {q_top}, H = {h}, V = {v})"
        )));
    }
    let energy: f64 = coefficients.iter().map(|c| c.norm_sqr()).collect::<CompensatedSum>().value();
    if energy == 0.0 {
        return Err(Error::Degenerate("coefficient vector is zero".into()));
    }

    // K(m, n) = ∫_{−V}^{V} (n/m)^{it} dt.
    let logs: Vec<f64> = (1..=h).map(|m| (m as f64).ln()).collect();
    let kernel: Vec<f64> = (0..h * h)
        .map(|idx| {
            let (i, j) = (idx / h, idx % h);
            if i == j {
                2.0 * v
            } else {
                let lam = logs[j] - logs[i];
                2.0 * (v * lam).sin() / lam
            }
        })
        .collect();

    let lhs: f64 = primitive_band(q_top)
        .iter()
        .map(|psi| {
            let u: Vec<Complex64> = coefficients
                .iter()
                .enumerate()
                .map(|(i, c)| c * psi.value(i as i64 + 1))
                .collect();
            let mut acc = ComplexCompensatedSum::new();
            for i in 0..h {
                if u[i].norm_sqr() == 0.0 {
                    continue;
                }
                let row = &kernel[i * h..(i + 1) * h];
                let inner: Complex64 = row.iter().zip(&u).map(|(k, uj)| uj.conj() * k).sum();
                acc.add(u[i] * inner);
            }
            acc.value().re
        })
        .collect::<CompensatedSum>()
        .value();
    let q = q_top as f64;
    let rhs = (q * q * v + h as f64) * energy;
    Ok(SieveMonitorReport {
        q: q_top,
        v,
        h,
        seed: None,
        lhs,
        rhs,
        ratio: lhs / rhs,
    })
}

/// Random instances with Q ∈ [2, q_max], H ∈ [1, h_max], V ∈ (0, v_max];
/// trial i draws from a ChaCha stream seeded by (seed, i).
pub fn sieve_trials(seed: u64, trials: usize, q_max: u64, h_max: usize, v_max: f64) -> Result<Vec<SieveMonitorReport>> {
    (0..trials)
        .into_par_iter()
        .map(|i| {
            let trial_seed = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(i as u64);
            let mut rng = ChaCha8Rng::seed_from_u64(trial_seed);
            let q = rng.gen_range(2..=q_max.max(2));
            let h = rng.gen_range(1..=h_max.max(1));
            let v = v_max * (1.0 - rng.gen::<f64>());
            let coefficients: Vec<Complex64> = (0..h)
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let mut report = hybrid_large_sieve_monitor(q, v, &coefficients)?;
            report.seed = Some(trial_seed);
            Ok(report)
        })
        .collect()
}

/// S(Q,X,d) = Σ_{q∼Q} Σ*_ψ max_{M≤X} |Σ_{m≤M} a(md)ψ(m)| for a given table.
pub fn s_qxd_from_table(q_top: u64, x: f64, d: u64, a: &ArithFnTable) -> Result<f64> {
    if d == 0 || !(x >= 0.0) {
        return Err(Error::InvalidParameter("need d ≥ 1 and X ≥ 0".into()));
    }
    let m_max = x.floor() as u64;
    a.require((m_max * d) as usize)?;
    let sum = primitive_band(q_top)
        .par_iter()
        .map(|psi| {
            let mut partial = ComplexCompensatedSum::new();
            let mut best: f64 = 0.0;
            for m in 1..=m_max {
                partial.add(psi.value(m as i64) * a.get((m * d) as usize));
                best = best.max(partial.value().norm());
            }
            best
        })
        .collect::<Vec<f64>>()
        .into_iter()
        .collect::<CompensatedSum>()
        .value();
    Ok(sum)
}

/// S(Q,X,d) with a_ν built from the mollifier spec.
pub fn s_qxd_bruteforce(q_top: u64, x: f64, d: u64, nu: u32, spec: &MollifierSpec) -> Result<f64> {
    let span = (x.max(0.0).floor() as u64).saturating_mul(d) as usize;
    if span > TABLE_BUDGET || q_top > 1 << 12 {
        return Err(Error::Budget(format!("X·d = {span} or Q = {q_top} beyond desk scale")));
    }
    let span = span.max(1);
    let table = match nu {
        1 => compute_a1(span)?,
        2 => compute_a2(span, &spec.coefficient_table(span)?)?,
        _ => return Err(Error::InvalidParameter(format!("ν must be 1 or 2, got {nu}"))),
    };
    s_qxd_from_table(q_top, x, d, &table)
}
