//! Numerical laboratory for mollified moments of ζ′ at the zeros of ζ.
//!
//! The crate builds the arithmetic objects behind the method (the mollifier
//! coefficients, Dirichlet convolutions, character sums, the Vaughan-type
//! decomposition) and checks each identity numerically at small scale, then
//! measures the discrete moments over actual zeros of ζ.

pub mod arith;
pub mod characters;
pub mod error;
pub mod mollifier;
pub mod numbers;
pub mod quadrature;
pub mod sum;
pub mod vaughan;
pub mod zeta;

pub use arith::{ArithFnTable, StandardFn, TableCache};
pub use characters::{DirichletCharacter, GaussSumResult};
pub use error::{Error, Result};
pub use mollifier::{MainTermReport, MollifierPolynomial, MollifierSpec};
pub use vaughan::{DyadicPlan, VaughanConfig};
pub use zeta::{MomentResult, ZeroList};
