//! The mollifier B(s) = Σ_{k≤y} μ(k)P(log(y/k)/log y) k^{-s}, its main-term
//! formulas, the optimal choice of P, and the proportion arithmetic.

mod kappa;
mod main_terms;
mod optimize;
mod polynomial;
mod spec;

pub use kappa::{kappa_d_lower, kappa_d_lower_with, kappa_star_lower, MULTIPLICITY_MEAN_BOUND};
pub use main_terms::{
    predicted_m11_factor, predicted_m21_factor, predicted_s1_factor, predicted_s2_factor,
    MainTermReport,
};
pub use optimize::{optimize_p, OptimizedPolynomial};
pub use polynomial::MollifierPolynomial;
pub use spec::MollifierSpec;
