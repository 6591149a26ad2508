use std::fs;
use std::io::BufWriter;

use mollify_core::arith::{compute_a1, compute_a2};
use mollify_core::characters::{m_nu_direct, m_nu_rearranged, required_coefficients};
use mollify_core::mollifier::{kappa_d_lower_with, optimize_p};
use mollify_core::vaughan::{
    decompose_a2, hybrid_large_sieve_monitor, sieve_trials, split_by_divisor, verify_vaughan,
};
use mollify_core::zeta::{check_overlap, compute_moments, count_n, ingest_zeros, write_zeros};
use mollify_core::{Error, MainTermReport, MollifierPolynomial, MollifierSpec, Result, VaughanConfig};
use num_complex::Complex64;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::args::*;
use crate::cache::Cache;
use crate::report::Report;

/// Rotation used by the sieve phase-invariance check.
const PHASE: f64 = 1.0;
const PHASE_TOLERANCE: f64 = 1e-10;

pub fn run(command: &Command, cache: &Cache) -> Result<Report> {
    match command {
        Command::VerifyVaughan(a) => vaughan(a),
        Command::VerifyRearrangement(a) => rearrangement(a, cache),
        Command::VerifySplit(a) => split(a),
        Command::Moments(a) => moments(a, cache),
        Command::OptimizePoly(a) => optimize(a),
        Command::Zeros(ZerosCommand::Find(a)) => zeros_find(a, cache),
        Command::Zeros(ZerosCommand::Ingest(a)) => zeros_ingest(a),
        Command::MonitorSieve(a) => sieve(a),
        Command::ReportKappa(a) => kappa(a),
    }
}

pub fn default_format(command: &Command) -> Format {
    match command {
        Command::Moments(_) => Format::Csv,
        _ => Format::Text,
    }
}

fn polynomial(coefficients: &Option<Vec<f64>>, theta: f64) -> Result<MollifierPolynomial> {
    match coefficients {
        Some(c) => MollifierPolynomial::new(c.clone()),
        None => Ok(MollifierPolynomial::quadratic_for(theta)),
    }
}

fn vaughan(a: &VaughanArgs) -> Result<Report> {
    let config = VaughanConfig::new(a.r, a.x)?;
    let limit = a.n.unwrap_or_else(|| config.exact_range().min(1e5) as usize);
    let r = verify_vaughan(&config, limit)?;
    let mut report = Report::new("vaughan")
        .param("r", a.r)
        .param("X", a.x)
        .param("N", limit)
        .worst("n", r.worst_index)
        .detail("tolerance", r.tolerance);
    report.deviation = Some(r.deviation);
    report.pass = r.pass;
    Ok(report)
}

fn rearrangement(a: &RearrangementArgs, cache: &Cache) -> Result<Report> {
    let poly = polynomial(&a.poly, a.y.ln() / a.t.ln())?;
    let spec = MollifierSpec::with_length(a.y, a.t, poly)?;
    let limit = required_coefficients(&spec).max(1);
    let table = match a.nu {
        1 => cache.table("a1", "", limit, || compute_a1(limit))?,
        2 => {
            let key = format!("y={:?} poly={}", spec.length(), spec.poly());
            cache.table("a2", &key, limit, || compute_a2(limit, &spec.coefficient_table(limit)?))?
        }
        nu => return Err(Error::InvalidParameter(format!("nu must be 1 or 2, got {nu}"))),
    };
    let direct = m_nu_direct(a.nu, &spec, &table)?;
    let rearranged = m_nu_rearranged(a.nu, &spec, &table)?;
    let deviation = (direct - rearranged).norm() / direct.norm().max(1.0);
    let mut report = Report::new("rearrangement")
        .param("nu", a.nu)
        .param("y", a.y)
        .param("T", a.t)
        .param("poly", spec.poly().coefficients())
        .detail("direct", [direct.re, direct.im])
        .detail("rearranged", [rearranged.re, rearranged.im])
        .detail("tolerance", a.tolerance);
    report.deviation = Some(deviation);
    report.pass = deviation <= a.tolerance;
    Ok(report)
}

fn split(a: &SplitArgs) -> Result<Report> {
    let poly = polynomial(&a.poly, a.y.ln() / a.t.ln())?;
    let spec = MollifierSpec::with_length(a.y, a.t, poly)?;
    let terms = decompose_a2(&spec, &VaughanConfig::new(3, a.x)?, a.n_cap)?;
    if terms.is_empty() || a.d_max == 0 {
        return Err(Error::InvalidParameter("nothing to split".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let picked: Vec<usize> = if a.terms >= terms.len() {
        (0..terms.len()).collect()
    } else {
        let mut v = sample(&mut rng, terms.len(), a.terms).into_vec();
        v.sort_unstable();
        v
    };
    let jobs: Vec<(usize, u64)> = picked.iter().flat_map(|&t| (1..=a.d_max).map(move |d| (t, d))).collect();
    let results = jobs
        .par_iter()
        .map(|&(t, d)| split_by_divisor(&terms[t], &spec, d, a.m_max).map(|r| (t, r)))
        .collect::<Result<Vec<_>>>()?;
    let (worst_term, worst) = results
        .iter()
        .max_by(|x, y| x.1.deviation.total_cmp(&y.1.deviation))
        .expect("at least one job");
    let mut report = Report::new("split")
        .param("y", a.y)
        .param("T", a.t)
        .param("X", a.x)
        .param("n_cap", a.n_cap)
        .param("d_max", a.d_max)
        .param("m_max", a.m_max)
        .param("terms", picked.len())
        .param("seed", a.seed)
        .worst("term", worst_term)
        .worst("d", worst.d)
        .worst("m", worst.worst_m)
        .detail("decomposition_terms", terms.len())
        .detail("checks", results.len());
    report.deviation = Some(worst.deviation);
    report.pass = results.iter().all(|r| r.1.pass);
    Ok(report)
}

fn moments(a: &MomentsArgs, cache: &Cache) -> Result<Report> {
    let poly = polynomial(&a.poly, a.theta)?;
    let spec = match a.y {
        Some(y) => MollifierSpec::with_length(y, a.t, poly)?,
        None => MollifierSpec::new(a.theta, a.t, poly)?,
    };
    let zeros = if a.zeros == "compute" {
        cache.zeros(a.t)?
    } else {
        let list = ingest_zeros(&a.zeros)?;
        check_overlap(&list)?;
        list
    };
    let m = compute_moments(a.t, &spec, &zeros)?;
    let (lo, hi) = (a.band[0], a.band[1]);
    let in_band = |r: Option<f64>| r.map(|r| (lo..=hi).contains(&r));
    let mut report = Report::new("moments")
        .param("T", a.t)
        .param("theta", m.theta)
        .param("y", m.length)
        .param("poly", spec.poly().coefficients())
        .param("zeros", &a.zeros)
        .detail("ReS1", m.s1.re)
        .detail("ImS1", m.s1.im)
        .detail("S2", m.s2)
        .detail("N", m.n_t)
        .detail("kappa_bound", m.kappa_bound)
        .detail("predicted_s1", m.predicted_s1)
        .detail("predicted_s2", m.predicted_s2)
        .detail("ratio_s1", m.ratio_s1)
        .detail("ratio_s2", m.ratio_s2)
        .detail("band", [lo, hi])
        .detail("ratio_s1_in_band", in_band(m.ratio_s1))
        .detail("ratio_s2_in_band", in_band(m.ratio_s2))
        .detail("possible_multiple_zeros", m.possible_multiple_zeros);
    report.pass = m.s2 >= 0.0 && m.kappa_bound > 0.0 && m.kappa_bound <= 1.01;
    report.csv = Some((
        ["T", "theta", "poly", "ReS1", "ImS1", "S2", "N", "kappa_bound"].map(String::from).to_vec(),
        vec![
            a.t.to_string(),
            m.theta.to_string(),
            m.poly.clone(),
            m.s1.re.to_string(),
            m.s1.im.to_string(),
            m.s2.to_string(),
            m.n_t.to_string(),
            m.kappa_bound.to_string(),
        ],
    ));
    Ok(report)
}

fn optimize(a: &OptimizeArgs) -> Result<Report> {
    let opt = optimize_p(a.theta, a.degree)?;
    let main = MainTermReport::compute(a.theta, &opt.poly)?;
    let mut report = Report::new("optimize-poly")
        .param("theta", a.theta)
        .param("degree", a.degree)
        .detail("coefficients", opt.poly.coefficients())
        .detail("value", opt.value)
        .detail("method", opt.method)
        .detail("s1_factor", main.s1_factor)
        .detail("s2_factor", main.s2_factor);
    report.deviation = Some(opt.gradient_norm);
    Ok(report)
}

fn zeros_find(a: &ZerosFindArgs, cache: &Cache) -> Result<Report> {
    let zeros = cache.zeros(a.t)?;
    if let Some(path) = &a.common.output {
        write_zeros(&zeros, BufWriter::new(fs::File::create(path)?))?;
    }
    let count = count_n(a.t, &zeros)?;
    let mut report = Report::new("zeros-find")
        .param("T", a.t)
        .detail("count", zeros.len())
        .detail("first", zeros.ordinates().first())
        .detail("formula", count.formula)
        .detail("formula_value", count.formula_value);
    if let Some((lo, hi)) = zeros.largest_gap(0.0, a.t) {
        report = report.worst("gap", [lo, hi]);
    }
    report.deviation = Some((count.census as f64 - count.formula as f64).abs());
    report.pass = count.agree;
    Ok(report)
}

fn zeros_ingest(a: &ZerosIngestArgs) -> Result<Report> {
    let zeros = ingest_zeros(&a.zeros)?;
    check_overlap(&zeros)?;
    Ok(Report::new("zeros-ingest")
        .param("zeros", a.zeros.display().to_string())
        .detail("count", zeros.len())
        .detail("max_height", zeros.max_height()))
}

fn sieve(a: &SieveArgs) -> Result<Report> {
    let trials = sieve_trials(a.seed, a.trials, a.q_max, a.h_max, a.v_max)?;
    let worst = trials
        .iter()
        .max_by(|x, y| x.ratio.total_cmp(&y.ratio))
        .ok_or_else(|| Error::InvalidParameter("at least one trial is required".into()))?;

    let mut rng = ChaCha8Rng::seed_from_u64(a.seed ^ 0x5eed);
    let h: Vec<Complex64> = (0..a.h_max)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let turn = Complex64::from_polar(1.0, PHASE);
    let rotated: Vec<Complex64> = h.iter().map(|c| c * turn).collect();
    let base = hybrid_large_sieve_monitor(a.q_max, a.v_max, &h)?;
    let other = hybrid_large_sieve_monitor(a.q_max, a.v_max, &rotated)?;
    let phase_deviation = (base.lhs - other.lhs).abs() / base.lhs.max(f64::MIN_POSITIVE);

    let mut report = Report::new("sieve")
        .param("seed", a.seed)
        .param("trials", a.trials)
        .param("q_max", a.q_max)
        .param("h_max", a.h_max)
        .param("v_max", a.v_max)
        .param("ratio_limit", a.ratio_limit)
        .worst("q", worst.q)
        .worst("v", worst.v)
        .worst("h", worst.h)
        .worst("seed", worst.seed)
        .detail("max_ratio", worst.ratio)
        .detail("phase_deviation", phase_deviation);
    report.deviation = Some(worst.ratio);
    report.pass = worst.ratio <= a.ratio_limit && phase_deviation <= PHASE_TOLERANCE;
    Ok(report)
}

fn kappa(a: &KappaArgs) -> Result<Report> {
    let opt = optimize_p(a.theta, a.degree)?;
    let kappa_d = kappa_d_lower_with(opt.value, a.multiplicity_bound)?;
    Ok(Report::new("report-kappa")
        .param("theta", a.theta)
        .param("degree", a.degree)
        .param("multiplicity_bound", a.multiplicity_bound)
        .detail("coefficients", opt.poly.coefficients())
        .detail("kappa_star", opt.value)
        .detail("kappa_d", kappa_d))
}
