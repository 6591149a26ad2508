//! Arithmetic-function tables, sieves and exact Dirichlet convolution.
//!
//! Every table is indexed from 1: `table.get(n)` is f(n) for `1 <= n <= limit`.
//! The mollified-moment coefficients are built here:
//! a₁ = Λ∗log (the coefficients of ζ′/ζ·ζ′) and a₂ = −Λ∗log∗log∗b
//! (the coefficients of ζ′/ζ·ζ′²·B).

mod cache;
mod convolve;
mod sieve;

pub use cache::{read_table, write_table, TableCache};
pub use convolve::{compute_a1, compute_a2, dirichlet_convolve};
pub use sieve::{sieve_standard, StandardFn};

use crate::error::{Error, Result};

/// Values of an arithmetic function on `1..=limit`.
#[derive(Debug, Clone, PartialEq)]
pub struct ArithFnTable {
    name: String,
    values: Vec<f64>,
}

impl ArithFnTable {
    /// Wraps `values`, where `values[n - 1]` is f(n).
    pub fn new(name: impl Into<String>, values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyTable);
        }
        Ok(Self {
            name: name.into(),
            values,
        })
    }

    pub fn from_fn(name: impl Into<String>, limit: usize, f: impl Fn(usize) -> f64) -> Result<Self> {
        Self::new(name, (1..=limit).map(f).collect())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn limit(&self) -> usize {
        self.values.len()
    }

    /// f(n). Panics outside `1..=limit`.
    #[inline]
    pub fn get(&self, n: usize) -> f64 {
        assert!(
            n >= 1 && n <= self.values.len(),
            "{}({n}) is outside the table 1..={}",
            self.name,
            self.values.len()
        );
        self.values[n - 1]
    }

    pub fn value(&self, n: usize) -> Option<f64> {
        n.checked_sub(1).and_then(|i| self.values.get(i)).copied()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn truncated(&self, limit: usize) -> Result<Self> {
        self.require(limit)?;
        if limit == 0 {
            return Err(Error::EmptyTable);
        }
        Ok(Self {
            name: self.name.clone(),
            values: self.values[..limit].to_vec(),
        })
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            name: self.name.clone(),
            values: self.values.iter().map(|v| v * factor).collect(),
        }
    }

    /// Fails with [`Error::TableTooShort`] unless the table covers `1..=needed`.
    pub fn require(&self, needed: usize) -> Result<()> {
        if needed > self.limit() {
            Err(Error::TableTooShort {
                name: self.name.clone(),
                needed,
                available: self.limit(),
            })
        } else {
            Ok(())
        }
    }
}

/// Result of checking |a₂(n)| against 𝓛³·τ₉(n)·max|P|.
///
/// The shape of the bound is only an order-of-magnitude guide, so excesses
/// are reported rather than treated as failures.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct GrowthReport {
    pub checked: usize,
    pub violations: usize,
    pub first_violations: Vec<usize>,
    pub worst_index: usize,
    pub worst_ratio: f64,
}

pub fn a2_growth_monitor(
    a2: &ArithFnTable,
    tau9: &ArithFnTable,
    log_height: f64,
    max_abs_p: f64,
) -> Result<GrowthReport> {
    tau9.require(a2.limit())?;
    let scale = log_height.powi(3) * max_abs_p;
    if !(scale > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "growth scale 𝓛³·max|P| must be positive, got {scale}"
        )));
    }
    let mut report = GrowthReport {
        checked: a2.limit(),
        violations: 0,
        first_violations: Vec::new(),
        worst_index: 1,
        worst_ratio: 0.0,
    };
    for n in 1..=a2.limit() {
        let ratio = a2.get(n).abs() / (scale * tau9.get(n));
        if ratio > report.worst_ratio {
            report.worst_ratio = ratio;
            report.worst_index = n;
        }
        if ratio > 1.0 {
            report.violations += 1;
            if report.first_violations.len() < 16 {
                report.first_violations.push(n);
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_table_rejected() {
        assert!(matches!(ArithFnTable::new("f", vec![]), Err(Error::EmptyTable)));
    }

    #[test]
    fn indexing_is_one_based() {
        let t = ArithFnTable::from_fn("id", 5, |n| n as f64).unwrap();
        assert_eq!(t.get(1), 1.0);
        assert_eq!(t.get(5), 5.0);
        assert_eq!(t.value(0), None);
        assert_eq!(t.value(6), None);
        assert!(t.require(6).is_err());
        assert_eq!(t.truncated(3).unwrap().values(), &[1.0, 2.0, 3.0]);
    }
}
