use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

const MAX_TERMS: usize = 40;

/// B_{2k}/(2k)! for k = 1..=MAX_TERMS, via (−1)^{k+1}·2ζ(2k)/(2π)^{2k}.
fn bernoulli_ratios() -> &'static [f64; MAX_TERMS] {
    static TABLE: OnceLock<[f64; MAX_TERMS]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut out = [0.0; MAX_TERMS];
        for (i, slot) in out.iter_mut().enumerate() {
            let k = i as i32 + 1;
            let zeta = match k {
                1 => PI.powi(2) / 6.0,
                2 => PI.powi(4) / 90.0,
                3 => PI.powi(6) / 945.0,
                4 => PI.powi(8) / 9450.0,
                _ => (1..=200).rev().map(|n| (n as f64).powi(-2 * k)).sum(),
            };
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            *slot = sign * 2.0 * zeta / (2.0 * PI).powi(2 * k);
        }
        out
    })
}

/// ζ(s) by Euler–Maclaurin summation, s ≠ 1.
///
/// The cut N grows with |Im s| so the correction series converges to f64
/// precision; this is the slow reference path.
pub fn zeta_em(s: Complex64) -> Complex64 {
    let cut = ((s.im.abs() + 2.0 * MAX_TERMS as f64) / PI).ceil().max(10.0) as u64;
    zeta_em_with_cut(s, cut)
}

pub(crate) fn zeta_em_with_cut(s: Complex64, cut: u64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    let mut head = Complex64::new(0.0, 0.0);
    let mut comp = Complex64::new(0.0, 0.0);
    for n in (1..cut).rev() {
        // Smallest terms first, with Kahan compensation on each component.
        let term = (-s * (n as f64).ln()).exp();
        let y = term - comp;
        let t = head + y;
        comp = (t - head) - y;
        head = t;
    }
    let n = cut as f64;
    let ln_n = n.ln();
    let n_pow = (-s * ln_n).exp();
    let mut total = head + n_pow * n / (s - one) + n_pow * 0.5;

    // Σ_k B_{2k}/(2k)! · s(s+1)⋯(s+2k−2) · N^{−s−2k+1}
    let mut rising = s;
    let mut power = n_pow / n;
    for (k, &ratio) in bernoulli_ratios().iter().enumerate() {
        let term = rising * power * ratio;
        total += term;
        if term.norm() < 1e-18 * total.norm() {
            break;
        }
        let j = 2.0 * k as f64 + 1.0;
        rising *= (s + j) * (s + j + 1.0);
        power /= n * n;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        let z2 = zeta_em(Complex64::new(2.0, 0.0));
        assert!((z2.re - PI * PI / 6.0).abs() < 1e-14);
        let half = zeta_em(Complex64::new(0.5, 0.0));
        assert!((half.re + 1.460_354_508_809_586_8).abs() < 1e-13);
        let z0 = zeta_em(Complex64::new(0.0, 0.0));
        assert!((z0.re + 0.5).abs() < 1e-14);
    }

    #[test]
    fn cut_independence() {
        let s = Complex64::new(0.5, 250.0);
        let a = zeta_em_with_cut(s, 200);
        let b = zeta_em_with_cut(s, 400);
        assert!((a - b).norm() < 1e-11, "{a} vs {b}");
    }
}
