use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;

use super::{dirichlet_convolve, ArithFnTable};
use crate::error::{Error, Result};

/// The standard arithmetic functions the sieve knows how to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StandardFn {
    Mobius,
    VonMangoldt,
    Log,
    One,
    /// τ_k, the k-fold convolution 1∗…∗1, for 2 ≤ k ≤ 9.
    Tau(u32),
}

impl fmt::Display for StandardFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StandardFn::Mobius => f.write_str("mobius"),
            StandardFn::VonMangoldt => f.write_str("vonmangoldt"),
            StandardFn::Log => f.write_str("log"),
            StandardFn::One => f.write_str("one"),
            StandardFn::Tau(k) => write!(f, "tau_{k}"),
        }
    }
}

impl FromStr for StandardFn {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mobius" => Ok(StandardFn::Mobius),
            "vonmangoldt" => Ok(StandardFn::VonMangoldt),
            "log" => Ok(StandardFn::Log),
            "one" => Ok(StandardFn::One),
            _ => s
                .strip_prefix("tau_")
                .and_then(|k| k.parse::<u32>().ok())
                .filter(|k| (2..=9).contains(k))
                .map(StandardFn::Tau)
                .ok_or_else(|| Error::UnknownFunction(s.to_string())),
        }
    }
}

/// Builds the table of `func` on `1..=limit`.
pub fn sieve_standard(func: StandardFn, limit: usize) -> Result<ArithFnTable> {
    if limit == 0 {
        return Err(Error::EmptyTable);
    }
    let name = func.to_string();
    match func {
        StandardFn::Mobius => ArithFnTable::new(name, mobius_sieve(limit)),
        StandardFn::VonMangoldt => {
            let spf = smallest_prime_factors(limit);
            let values = (1..=limit)
                .into_par_iter()
                .map(|n| {
                    if n == 1 {
                        return 0.0;
                    }
                    let p = spf[n];
                    let mut m = n;
                    while m % p == 0 {
                        m /= p;
                    }
                    if m == 1 {
                        (p as f64).ln()
                    } else {
                        0.0
                    }
                })
                .collect();
            ArithFnTable::new(name, values)
        }
        StandardFn::Log => {
            ArithFnTable::new(name, (1..=limit).into_par_iter().map(|n| (n as f64).ln()).collect())
        }
        StandardFn::One => ArithFnTable::new(name, vec![1.0; limit]),
        StandardFn::Tau(k) => {
            if !(2..=9).contains(&k) {
                return Err(Error::UnknownFunction(name));
            }
            tau_k(k, limit)
        }
    }
}

type TauCache = Mutex<HashMap<u32, Arc<ArithFnTable>>>;

fn tau_cache() -> &'static TauCache {
    static CACHE: OnceLock<TauCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// τ_k by k−1 convolutions of 1, cached per k at the largest limit seen.
fn tau_k(k: u32, limit: usize) -> Result<ArithFnTable> {
    if let Some(t) = tau_cache().lock().unwrap().get(&k) {
        if t.limit() >= limit {
            return t.truncated(limit);
        }
    }
    let one = sieve_standard(StandardFn::One, limit)?;
    let mut acc = one.clone();
    for _ in 1..k {
        acc = dirichlet_convolve(&acc, &one, limit)?;
    }
    let table = acc.renamed(format!("tau_{k}"));
    let mut cache = tau_cache().lock().unwrap();
    let slot = cache.entry(k).or_insert_with(|| Arc::new(table.clone()));
    if slot.limit() < limit {
        *slot = Arc::new(table.clone());
    }
    Ok(table)
}

/// Smallest prime factor of every n ≤ limit (linear sieve); index 0 and 1 hold 0 and 1.
pub(crate) fn smallest_prime_factors(limit: usize) -> Vec<usize> {
    let mut spf = vec![0usize; limit + 1];
    let mut primes = Vec::new();
    if limit >= 1 {
        spf[1] = 1;
    }
    for n in 2..=limit {
        if spf[n] == 0 {
            spf[n] = n;
            primes.push(n);
        }
        for &p in &primes {
            if p > spf[n] || n * p > limit {
                break;
            }
            spf[n * p] = p;
        }
    }
    spf
}

fn mobius_sieve(limit: usize) -> Vec<f64> {
    let spf = smallest_prime_factors(limit);
    let mut mu = vec![0i8; limit + 1];
    mu[1] = 1;
    for n in 2..=limit {
        let p = spf[n];
        let m = n / p;
        mu[n] = if m % p == 0 { 0 } else { -mu[m] };
    }
    mu[1..].iter().map(|&v| v as f64).collect()
}
