use mollify_core::arith::compute_a1;
use mollify_core::characters::{
    coprime_partial_sum_max, delta_term, delta_trivial_bound, enumerate_characters, gauss_sum, m_nu_by_modulus,
    m_nu_direct, m_nu_rearranged, polya_vinogradov_bound, polya_vinogradov_max, primitive_character_count,
    primitive_characters, required_coefficients, twisted_gauss_sum, DeltaParams,
};
use mollify_core::mollifier::{MollifierPolynomial, MollifierSpec};
use mollify_core::numbers::{divisor_function_k, gcd};
use num_complex::Complex64;
use proptest::prelude::*;

#[test]
fn orthogonality_up_to_100() {
    for q in 1..=100u64 {
        for chi in enumerate_characters(q) {
            let s: Complex64 = (0..q as i64).map(|a| chi.value(a)).sum();
            if chi.is_trivial() {
                assert!((s.re - mollify_core::numbers::totient(q) as f64).abs() < 1e-9);
            } else {
                assert!(s.norm() < 1e-9, "q = {q}");
            }
            assert_eq!(chi.value(1), Complex64::new(1.0, 0.0));
        }
    }
}

#[test]
fn closure_up_to_60() {
    for q in 1..=60u64 {
        let chars = enumerate_characters(q);
        for a in &chars {
            for b in &chars {
                let prod = a.mul(b).unwrap();
                assert!(chars.iter().any(|c| c.same_values(&prod)), "q = {q}");
            }
        }
    }
}

#[test]
fn primitive_counts_up_to_200() {
    for q in 1..=200u64 {
        assert_eq!(primitive_characters(q).len() as u64, primitive_character_count(q), "q = {q}");
    }
}

#[test]
fn gauss_sum_twist_up_to_60() {
    for q in 1..=60u64 {
        for chi in primitive_characters(q) {
            let tau = gauss_sum(&chi).value;
            for n in 1..=2 * q as i64 {
                if gcd(n as u64, q) != 1 {
                    continue;
                }
                let lhs = twisted_gauss_sum(&chi, n);
                let rhs = chi.conj().value(n) * tau;
                assert!((lhs - rhs).norm() < 1e-10, "q = {q}, n = {n}");
            }
        }
    }
}

#[test]
fn polya_vinogradov_monitor() {
    let mut worst: f64 = 0.0;
    for q in 3..=200u64 {
        let bound = polya_vinogradov_bound(q);
        for chi in enumerate_characters(q).into_iter().filter(|c| !c.is_trivial()) {
            let m = polya_vinogradov_max(&chi, 10_000).unwrap();
            assert!(m <= bound, "q = {q}: {m} > {bound}");
            for d in [6u64, 30] {
                let c = coprime_partial_sum_max(&chi, 2_000, d).unwrap();
                worst = worst.max(c / (divisor_function_k(d, 2) as f64 * bound));
            }
        }
    }
    eprintln!("largest coprime partial sum / τ(D)√q log q: {worst:.3}");
}

#[test]
fn rearrangement_small_grid() {
    for (y, t) in [(3.0, 50.0), (10.0, 50.0), (12.0, 100.0), (20.0, 200.0)] {
        let spec = MollifierSpec::with_length(y, t, MollifierPolynomial::linear()).unwrap();
        let a = compute_a1(required_coefficients(&spec)).unwrap();
        let d = m_nu_direct(1, &spec, &a).unwrap();
        let r = m_nu_rearranged(1, &spec, &a).unwrap();
        assert!((d - r).norm() <= 1e-8 * d.norm().max(1.0), "(y, T) = ({y}, {t}): {d} vs {r}");
        let bands = m_nu_by_modulus(1, &spec, &a).unwrap();
        assert_eq!(bands.len(), y as usize);
    }
}

#[test]
fn direct_sum_reversed_loop_oracle() {
    let spec = MollifierSpec::with_length(10.0, 50.0, MollifierPolynomial::quadratic_for(0.3)).unwrap();
    let a = compute_a1(required_coefficients(&spec)).unwrap();
    let direct = m_nu_direct(1, &spec, &a).unwrap();
    // m outer, k inner.
    let m_max = required_coefficients(&spec);
    let mut oracle = Complex64::new(0.0, 0.0);
    for m in 1..=m_max {
        for k in 1..=10u64 {
            if (m as f64) <= (k as f64 * 50.0 / (2.0 * std::f64::consts::PI)) * (1.0 + 1e-12) {
                let phase = -2.0 * std::f64::consts::PI * (m as u64 % k) as f64 / k as f64;
                oracle += Complex64::from_polar(a.get(m) * spec.coefficient(k) / k as f64, phase);
            }
        }
    }
    assert!((direct - oracle).norm() < 1e-12 * oracle.norm().max(1.0));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn delta_trivially_bounded(q in 1u64..40, k in 1u64..40, pick in 0usize..1000, dpick in 0usize..64) {
        prop_assume!(q * k <= 200 && gcd(k, q) == 1);
        let divs = mollify_core::numbers::divisors(k);
        let d = divs[dpick % divs.len()];
        let chars = enumerate_characters(q);
        let psi = &chars[pick % chars.len()];
        let params = DeltaParams { q, k, d };
        let v = delta_term(params, psi).unwrap();
        prop_assert!(v.norm() <= delta_trivial_bound(params) + 1e-15);
    }
}
