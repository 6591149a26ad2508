use serde::Serialize;

use super::TABLE_BUDGET;
use crate::arith::{dirichlet_convolve, sieve_standard, ArithFnTable, StandardFn};
use crate::error::{Error, Result};
use crate::numbers::binomial;

/// r and the truncation point X of M(s) = Σ_{n≤X} μ(n)n^{-s}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VaughanConfig {
    pub r: u32,
    pub x: f64,
}

impl VaughanConfig {
    pub fn new(r: u32, x: f64) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidParameter("r must be at least 1".into()));
        }
        if !(x >= 1.0 && x.is_finite()) {
            return Err(Error::InvalidParameter(format!("X must be a finite real ≥ 1, got {x}")));
        }
        Ok(Self { r, x })
    }

    /// X^r: the identity holds without remainder on n ≤ X^r.
    pub fn exact_range(&self) -> f64 {
        self.x.powi(self.r as i32)
    }

    /// μ restricted to n ≤ X, on 1..=limit.
    pub fn truncated_mobius(&self, limit: usize) -> Result<ArithFnTable> {
        let mu = sieve_standard(StandardFn::Mobius, limit)?;
        let cut = self.x.floor() as usize;
        ArithFnTable::from_fn("mobius_X", limit, |n| if n <= cut { mu.get(n) } else { 0.0 })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VaughanReport {
    pub config: VaughanConfig,
    pub limit: usize,
    pub worst_index: usize,
    pub deviation: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Coefficients on 1..=N of Σ_{j=1}^{r} (−1)^{j−1} C(r,j) ζ^{j−1} ζ′ M^j.
pub fn vaughan_rhs_coefficients(config: &VaughanConfig, limit: usize) -> Result<ArithFnTable> {
    if limit == 0 {
        return Err(Error::InvalidParameter("N must be at least 1".into()));
    }
    if limit > TABLE_BUDGET {
        return Err(Error::Budget(format!(
            "N = {limit} exceeds the table budget {TABLE_BUDGET}"
        )));
    }
    let mu_x = config.truncated_mobius(limit)?;
    let one = sieve_standard(StandardFn::One, limit)?;
    let neg_log = sieve_standard(StandardFn::Log, limit)?.scaled(-1.0);
    let mu_one = dirichlet_convolve(&mu_x, &one, limit)?;

    // P_1 = (−log)∗μ_X, P_{j+1} = P_j ∗ (μ_X∗1).
    let mut term = dirichlet_convolve(&neg_log, &mu_x, limit)?;
    let mut total = vec![0.0; limit];
    for j in 1..=config.r {
        let w = if j % 2 == 1 { 1.0 } else { -1.0 } * binomial(config.r as u64, j as u64) as f64;
        total.iter_mut().zip(term.values()).for_each(|(t, v)| *t += w * v);
        if j < config.r {
            term = dirichlet_convolve(&term, &mu_one, limit)?;
        }
    }
    ArithFnTable::new("vaughan_rhs", total)
}

/// Checks the coefficient identity against −Λ on n ≤ N ≤ X^r.
pub fn verify_vaughan(config: &VaughanConfig, limit: usize) -> Result<VaughanReport> {
    if limit as f64 > config.exact_range() * (1.0 + 1e-12) {
        return Err(Error::Precondition(format!(
            "N = {limit} exceeds X^r = {}; the remainder term no longer vanishes",
            config.exact_range()
        )));
    }
    let rhs = vaughan_rhs_coefficients(config, limit)?;
    let lambda = sieve_standard(StandardFn::VonMangoldt, limit)?;
    let (mut worst_index, mut deviation) = (1, 0.0);
    for n in 1..=limit {
        let dev = (rhs.get(n) + lambda.get(n)).abs();
        if dev > deviation {
            (worst_index, deviation) = (n, dev);
        }
    }
    let tolerance = 1e-9 * (limit as f64).ln().max(1.0);
    Ok(VaughanReport {
        config: *config,
        limit,
        worst_index,
        deviation,
        tolerance,
        pass: deviation <= tolerance,
    })
}
