use std::f64::consts::PI;

use mollify_core::mollifier::{MollifierPolynomial, MollifierSpec};
use mollify_core::zeta::{
    check_overlap, compute_moments, count_n, empirical_kappa_bound, find_zeros, hardy_z, hardy_z_em, read_zeros,
    riemann_siegel_z, rs_theta, rs_theta_asymptotic, smooth_count, write_zeros, zeta_prime_at_zero,
    zeta_prime_direct, ZeroList, ZeroSource,
};

#[test]
fn z_is_real_on_grid() {
    let mut t = 10.0;
    while t <= 1000.0 {
        let z = hardy_z_em(t);
        assert!(z.im.abs() < 1e-8, "t = {t}: residue {}", z.im);
        t += 3.7;
    }
}

#[test]
fn theta_properties() {
    let mut prev = rs_theta(10.0);
    let mut t = 10.05;
    while t < 2000.0 {
        let v = rs_theta(t);
        assert!(v > prev);
        prev = v;
        t += 0.05;
    }
    let r = rs_theta(100.0) - (50.0 * (100.0 / (2.0 * PI)).ln() - 50.0 - PI / 8.0);
    assert!(r > 0.0 && r <= 1.0 / 4800.0 + 7.0 / 5.76e9 + 1e-12, "remainder {r}");
    for t in [20.0, 300.0, 4000.0] {
        assert!((rs_theta(t) - rs_theta_asymptotic(t)).abs() < 1e-8);
    }
}

#[test]
fn riemann_siegel_agrees_with_reference() {
    for t in [250.0, 777.7, 1500.25, 4999.0] {
        assert!((riemann_siegel_z(t) - hardy_z_em(t).re).abs() < 1e-8, "t = {t}");
    }
}

#[test]
fn census_within_envelope() {
    let zeros = find_zeros(2000.0).unwrap();
    let mut prev = 0;
    for t in (20..=2000).step_by(37) {
        let t = t as f64 + 0.5;
        let census = zeros.count_up_to(t);
        assert!(census >= prev);
        prev = census;
        assert!((census as f64 - smooth_count(t)).abs() <= 1.0 + 0.6 * t.ln(), "t = {t}");
    }
    let report = count_n(100.0, &zeros).unwrap();
    assert_eq!((report.census, report.formula), (29, 29));
    assert!(report.agree);
    assert_eq!(count_n(14.0, &zeros).unwrap().census, 0);
}

#[test]
fn derivative_routes_first_hundred_zeros() {
    let zeros = find_zeros(240.0).unwrap();
    assert!(zeros.len() >= 100);
    for &g in &zeros.ordinates()[..100] {
        let a = zeta_prime_at_zero(g);
        let b = zeta_prime_direct(g);
        assert!((a.value - b).norm() <= 1e-6 * b.norm(), "γ = {g}: {} vs {b}", a.value);
        assert!(!a.possible_multiple);
    }
}

#[test]
fn zero_table_round_trip_and_overlap() {
    let zeros = find_zeros(300.0).unwrap();
    let mut bytes = Vec::new();
    write_zeros(&zeros, &mut bytes).unwrap();
    let back = read_zeros(bytes.as_slice()).unwrap();
    assert_eq!(back.ordinates(), zeros.ordinates());
    check_overlap(&back).unwrap();

    let mut shifted = zeros.ordinates().to_vec();
    shifted[3] += 1e-4;
    let bad = ZeroList::new(shifted, ZeroSource::Ingested, 300.0).unwrap();
    assert!(check_overlap(&bad).is_err());
    let mut missing = zeros.ordinates().to_vec();
    missing.remove(10);
    let bad = ZeroList::new(missing, ZeroSource::Ingested, 300.0).unwrap();
    assert!(check_overlap(&bad).is_err());

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("zeros.txt");
    std::fs::write(&path, "# two zeros\n14.134725141734693\n21.022039638771555\n").unwrap();
    let list = mollify_core::zeta::ingest_zeros(&path).unwrap();
    assert_eq!(list.len(), 2);
}

#[test]
fn moments_degenerate_mollifier_and_invariance() {
    let zeros = find_zeros(600.0).unwrap();
    let one = MollifierSpec::with_length(1.0 + 1e-9, 600.0, MollifierPolynomial::linear()).unwrap();
    let below_two = MollifierSpec::with_length(1.999, 600.0, MollifierPolynomial::quadratic_for(0.3)).unwrap();
    let a = compute_moments(600.0, &one, &zeros).unwrap();
    let b = compute_moments(600.0, &below_two, &zeros).unwrap();
    assert_eq!(a.s1, b.s1);
    assert_eq!(a.s2, b.s2);

    let spec = MollifierSpec::new(0.3, 600.0, MollifierPolynomial::quadratic_for(0.3)).unwrap();
    let r1 = compute_moments(600.0, &spec, &zeros).unwrap();
    let r2 = compute_moments(600.0, &spec, &zeros).unwrap();
    assert_eq!(r1, r2);
    let k = empirical_kappa_bound(&r1).unwrap();
    assert!(k > 0.0 && k <= 1.01);
    assert!(compute_moments(700.0, &spec, &zeros).is_err());
}

#[test]
fn first_zero_and_bracketing() {
    assert!(hardy_z(14.0) * hardy_z(15.0) < 0.0);
    assert!(hardy_z(14.134725).abs() < 1e-5);
}
