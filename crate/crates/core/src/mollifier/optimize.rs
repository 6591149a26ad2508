//! Maximizing κ(P) = S1(P)²/S2(P) over P of fixed degree with P(0)=0, P(1)=1.
//!
//! Write w = (w₀, c₁, …, c_d) and homogenize the constraint as Σc_j = w₀.
//! Then S1 = nᵀw and S2 = wᵀDw with
//!   n = (1/2, ϑa),  D = [[1/3, ϑaᵀ/2], [ϑa/2, ϑ²aaᵀ + G/(12ϑ)]],
//! a_j = 1/(j+1) and G_ij = ij/(i+j−1) (the Gram matrix of P′). D is positive
//! definite, so on the constraint subspace w = Zz the quotient (nᵀw)²/(wᵀDw)
//! is maximized by z ∝ (ZᵀDZ)⁻¹Zᵀn, after which w is rescaled to w₀ = 1.

use nalgebra::{DMatrix, DVector};

use super::MollifierPolynomial;
use crate::error::{Error, Result};

const GRADIENT_TOLERANCE: f64 = 1e-10;
const MAX_ASCENT_STEPS: usize = 20_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum OptimizationMethod {
    Stationarity,
    ProjectedAscent,
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct OptimizedPolynomial {
    pub poly: MollifierPolynomial,
    /// S1²/S2 at the optimum.
    pub value: f64,
    pub gradient_norm: f64,
    pub method: OptimizationMethod,
}

struct Quotient {
    n: DVector<f64>,
    d: DMatrix<f64>,
    /// Columns span {w : Σc = w₀}; column 0 is P(x) = x with w₀ = 1.
    basis: DMatrix<f64>,
}

impl Quotient {
    fn new(theta: f64, degree: usize) -> Self {
        let dim = degree + 1;
        let a = DVector::from_fn(degree, |j, _| 1.0 / (j as f64 + 2.0));
        let mut n = DVector::zeros(dim);
        n[0] = 0.5;
        let mut d = DMatrix::zeros(dim, dim);
        d[(0, 0)] = 1.0 / 3.0;
        for i in 0..degree {
            n[i + 1] = theta * a[i];
            d[(0, i + 1)] = 0.5 * theta * a[i];
            d[(i + 1, 0)] = 0.5 * theta * a[i];
            for j in 0..degree {
                let (fi, fj) = (i as f64 + 1.0, j as f64 + 1.0);
                d[(i + 1, j + 1)] =
                    theta * theta * a[i] * a[j] + fi * fj / (fi + fj - 1.0) / (12.0 * theta);
            }
        }
        let mut basis = DMatrix::zeros(dim, degree);
        basis[(0, 0)] = 1.0;
        basis[(1, 0)] = 1.0;
        for j in 1..degree {
            basis[(1, j)] = -1.0;
            basis[(j + 1, j)] = 1.0;
        }
        Self { n, d, basis }
    }

    /// w for affine coordinates v (P = x + Σ v_j (x^{j+1} − x)).
    fn point(&self, v: &DVector<f64>) -> DVector<f64> {
        let mut z = DVector::zeros(self.basis.ncols());
        z[0] = 1.0;
        z.rows_mut(1, v.len()).copy_from(v);
        &self.basis * z
    }

    fn value(&self, w: &DVector<f64>) -> f64 {
        let s1 = self.n.dot(w);
        s1 * s1 / w.dot(&(&self.d * w))
    }

    /// Gradient of the quotient with respect to the affine coordinates.
    fn gradient(&self, w: &DVector<f64>) -> DVector<f64> {
        let s1 = self.n.dot(w);
        let dw = &self.d * w;
        let s2 = w.dot(&dw);
        let full = &self.n * (2.0 * s1 / s2) - dw * (2.0 * s1 * s1 / (s2 * s2));
        let free = self.basis.columns(1, self.basis.ncols() - 1);
        free.transpose() * full
    }

    fn stationary_point(&self) -> Option<DVector<f64>> {
        let reduced = self.basis.transpose() * &self.d * &self.basis;
        let rhs = self.basis.transpose() * &self.n;
        let z = reduced.cholesky()?.solve(&rhs);
        if z[0].abs() < 1e-300 || !z.iter().all(|x| x.is_finite()) {
            return None;
        }
        Some(z.rows(1, z.len() - 1) / z[0])
    }

    fn coefficients(&self, v: &DVector<f64>) -> Vec<f64> {
        self.point(v).iter().skip(1).copied().collect()
    }
}

/// Best P of the given degree for exponent ϑ ∈ (0, 1/2].
pub fn optimize_p(theta: f64, degree: usize) -> Result<OptimizedPolynomial> {
    if degree == 0 {
        return Err(Error::InvalidParameter("degree must be at least 1".into()));
    }
    if !(theta > 0.0 && theta <= 0.5) {
        return Err(Error::InvalidParameter(format!(
            "theta must lie in (0, 1/2], got {theta}"
        )));
    }
    let q = Quotient::new(theta, degree);

    if let Some(v) = q.stationary_point() {
        let w = q.point(&v);
        let grad = q.gradient(&w).norm();
        if grad <= GRADIENT_TOLERANCE {
            return finish(&q, &v, grad, OptimizationMethod::Stationarity);
        }
        return ascend(&q, v);
    }
    // Fall back to ascent from the quadratic (or the line, at degree 1).
    let mut start = DVector::zeros(degree - 1);
    if degree >= 2 {
        start[0] = -theta;
    }
    ascend(&q, start)
}

fn ascend(q: &Quotient, mut v: DVector<f64>) -> Result<OptimizedPolynomial> {
    // Precondition by the quadratic form on the free coordinates.
    let free = q.basis.columns(1, q.basis.ncols() - 1);
    let metric = (free.transpose() * &q.d * free)
        .cholesky()
        .ok_or_else(|| Error::Degenerate("quadratic form is not positive definite".into()))?;
    for _ in 0..MAX_ASCENT_STEPS {
        let w = q.point(&v);
        let f = q.value(&w);
        let g = q.gradient(&w);
        let gn = g.norm();
        if gn <= GRADIENT_TOLERANCE {
            return finish(q, &v, gn, OptimizationMethod::ProjectedAscent);
        }
        let dir = metric.solve(&g);
        let slope = g.dot(&dir);
        // Armijo backtracking.
        let mut step = 1.0;
        loop {
            let candidate = &v + &dir * step;
            // slack of a few ulps: near the optimum the gain is below rounding
            if q.value(&q.point(&candidate)) >= f + 1e-4 * step * slope - 4.0 * f64::EPSILON * f.abs() {
                v = candidate;
                break;
            }
            step *= 0.5;
            if step < 1e-30 {
                return Err(Error::Degenerate(format!(
                    "projected ascent stalled with gradient norm {gn:e}"
                )));
            }
        }
    }
    Err(Error::Degenerate(format!(
        "projected ascent did not reach gradient norm {GRADIENT_TOLERANCE:e} in {MAX_ASCENT_STEPS} steps"
    )))
}

fn finish(
    q: &Quotient,
    v: &DVector<f64>,
    gradient_norm: f64,
    method: OptimizationMethod,
) -> Result<OptimizedPolynomial> {
    let w = q.point(v);
    Ok(OptimizedPolynomial {
        poly: MollifierPolynomial::new(q.coefficients(v))?,
        value: q.value(&w),
        gradient_norm,
        method,
    })
}
