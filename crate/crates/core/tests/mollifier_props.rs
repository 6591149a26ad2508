use mollify_core::mollifier::{
    kappa_star_lower, optimize_p, predicted_m11_factor, predicted_m21_factor, predicted_s1_factor,
    predicted_s2_factor, MollifierPolynomial,
};
use mollify_core::quadrature::GaussLegendre;
use proptest::prelude::*;

/// Random normalized polynomial: arbitrary c₂..c_d, c₁ fixed by P(1) = 1.
fn poly_strategy() -> impl Strategy<Value = MollifierPolynomial> {
    prop::collection::vec(-3.0f64..3.0, 0..6).prop_map(|tail| {
        let mut c = vec![1.0 - tail.iter().sum::<f64>()];
        c.extend(tail);
        MollifierPolynomial::new(c).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn closed_form_integrals_match_quadrature(p in poly_strategy()) {
        let rule = GaussLegendre::new(24);
        let i1 = rule.integrate(|x| p.eval(x), 0.0, 1.0);
        let i2 = rule.integrate(|x| p.eval(x).powi(2), 0.0, 1.0);
        let i3 = rule.integrate(|x| p.derivative(x).powi(2), 0.0, 1.0);
        prop_assert!((p.integral() - i1).abs() <= 1e-12 * i1.abs().max(1.0));
        prop_assert!((p.integral_of_square() - i2).abs() <= 1e-12 * i2.abs().max(1.0));
        prop_assert!((p.integral_of_derivative_square() - i3).abs() <= 1e-12 * i3.abs().max(1.0));
    }

    #[test]
    fn main_term_consistency(p in poly_strategy(), theta in 0.01f64..0.5) {
        let s1 = predicted_s1_factor(theta, &p).unwrap();
        let m11 = predicted_m11_factor(theta, &p).unwrap();
        prop_assert!((s1 + m11 - 1.0).abs() < 1e-12);
        let s2 = predicted_s2_factor(theta, &p).unwrap();
        let m21 = predicted_m21_factor(theta, &p).unwrap();
        let lhs = 0.5 + 3.0 * theta * p.integral_of_square() - 2.0 * m21;
        prop_assert!((lhs - s2).abs() <= 1e-12 * s2.abs().max(1.0));
    }
}

#[test]
fn quadratic_is_optimal_at_degree_two() {
    for theta in [0.1, 0.2, 0.3, 0.4, 0.49] {
        let opt = optimize_p(theta, 2).unwrap();
        let c = opt.poly.coefficients();
        assert!((c[0] - (1.0 + theta)).abs() < 1e-6 && (c[1] + theta).abs() < 1e-6, "ϑ = {theta}: {c:?}");
    }
}

#[test]
fn optimum_nondecreasing_in_degree() {
    for theta in [0.15, 0.3, 0.45, 0.5] {
        let mut prev = 0.0;
        for degree in 1..=6 {
            let opt = optimize_p(theta, degree).unwrap();
            let k = kappa_star_lower(
                predicted_s1_factor(theta, &opt.poly).unwrap(),
                predicted_s2_factor(theta, &opt.poly).unwrap(),
            )
            .unwrap();
            assert!((k - opt.value).abs() < 1e-12);
            // Higher degrees reach the same optimum; allow rounding.
            assert!(k >= prev - 1e-12, "ϑ = {theta}, degree {degree}: {k} < {prev}");
            prev = k;
        }
    }
}
