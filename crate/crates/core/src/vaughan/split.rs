use serde::Serialize;

use super::decomposition::{accumulate_product, SlotValues};
use super::{term_convolution, DecompositionTerm, TABLE_BUDGET};
use crate::error::{Error, Result};
use crate::mollifier::MollifierSpec;
use crate::numbers::{divisors, gcd};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SplitReport {
    pub d: u64,
    pub m_limit: u64,
    /// Ordered factorizations d = d₁⋯d₉ (all of them, τ₉(d)).
    pub factorizations: usize,
    /// Those that survive the support pruning.
    pub contributing: usize,
    pub worst_m: u64,
    pub deviation: f64,
    pub pass: bool,
}

/// Every ordered factorization of n into `parts` positive factors.
pub fn ordered_factorizations(n: u64, parts: usize) -> Vec<Vec<u64>> {
    fn go(n: u64, parts: usize, current: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if parts == 1 {
            current.push(n);
            out.push(current.clone());
            current.pop();
            return;
        }
        for d in divisors(n) {
            current.push(d);
            go(n / d, parts - 1, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    if parts > 0 && n > 0 {
        go(n, parts, &mut Vec::with_capacity(parts), &mut out);
    }
    out
}

/// Checks (f₁∗…∗f₉)(md) = Σ_{d=d₁⋯d₉} (g₁∗…∗g₉)(m) for m ≤ m_limit, with
/// gᵢ(m) = fᵢ(m dᵢ) when (m, d₁⋯d_{i−1}) = 1 and 0 otherwise.
pub fn split_by_divisor(
    term: &DecompositionTerm,
    spec: &MollifierSpec,
    d: u64,
    m_limit: u64,
) -> Result<SplitReport> {
    if d == 0 || m_limit == 0 {
        return Err(Error::InvalidParameter("d and m_limit must be positive".into()));
    }
    let span = m_limit.checked_mul(d).filter(|&s| s as usize <= TABLE_BUDGET).ok_or_else(|| {
        Error::Budget(format!("m_limit·d = {m_limit}·{d} exceeds {TABLE_BUDGET}"))
    })?;
    let lhs = term_convolution(term, spec, span as usize)?;
    let values = SlotValues::new(spec, span as usize)?;

    let all = ordered_factorizations(d, 9);
    let (mut sums, mut comps) = (vec![0.0; m_limit as usize], vec![0.0; m_limit as usize]);
    let mut contributing = 0;
    for parts in &all {
        let feasible = term.slots.iter().zip(parts).all(|(s, &di)| {
            if s.identity {
                di == 1
            } else {
                di <= s.hi
            }
        });
        if !feasible {
            continue;
        }
        let mut prefix = 1u64;
        let mut factors = Vec::with_capacity(9);
        for (slot, &di) in term.slots.iter().zip(parts) {
            let g: Vec<(u64, f64)> = values
                .support(slot, span)
                .into_iter()
                .filter(|&(n, _)| n % di == 0)
                .map(|(n, v)| (n / di, v))
                .filter(|&(m, _)| m <= m_limit && gcd(m, prefix) == 1)
                .collect();
            factors.push(g);
            prefix *= di;
        }
        if factors.iter().any(Vec::is_empty) {
            continue;
        }
        contributing += 1;
        accumulate_product(&factors, 1.0, m_limit, &mut sums, &mut comps);
    }

    let (mut worst_m, mut deviation, mut pass) = (1, 0.0, true);
    for m in 1..=m_limit {
        let left = lhs.get((m * d) as usize);
        let right = sums[m as usize - 1] + comps[m as usize - 1];
        let dev = (left - right).abs();
        if dev > 1e-10 * left.abs().max(1.0) {
            pass = false;
        }
        if dev > deviation {
            (worst_m, deviation) = (m, dev);
        }
    }
    Ok(SplitReport {
        d,
        m_limit,
        factorizations: all.len(),
        contributing,
        worst_m,
        deviation,
        pass,
    })
}
