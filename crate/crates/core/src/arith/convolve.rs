use rayon::prelude::*;

use super::{sieve_standard, ArithFnTable, StandardFn};
use crate::error::{Error, Result};
use crate::sum::add_compensated;

const BLOCK: usize = 1 << 14;

/// (f∗g)(n) = Σ_{de=n} f(d)g(e) on `1..=limit`, with compensated accumulation.
pub fn dirichlet_convolve(f: &ArithFnTable, g: &ArithFnTable, limit: usize) -> Result<ArithFnTable> {
    if limit == 0 {
        return Err(Error::EmptyTable);
    }
    f.require(limit)?;
    g.require(limit)?;
    let fv = f.values();
    let gv = g.values();
    let mut out = vec![0.0; limit];
    out.par_chunks_mut(BLOCK).enumerate().for_each(|(block, chunk)| {
        let lo = block * BLOCK + 1;
        let hi = lo + chunk.len() - 1;
        let mut comp = vec![0.0; chunk.len()];
        for d in 1..=hi {
            let fd = fv[d - 1];
            if fd == 0.0 {
                continue;
            }
            let e_lo = lo.div_ceil(d);
            let e_hi = hi / d;
            for e in e_lo..=e_hi {
                let ge = gv[e - 1];
                if ge != 0.0 {
                    add_compensated(chunk, &mut comp, d * e - lo, fd * ge);
                }
            }
        }
        chunk.iter_mut().zip(&comp).for_each(|(s, c)| *s += c);
    });
    ArithFnTable::new(format!("({})*({})", f.name(), g.name()), out)
}

/// a₁ = Λ∗log on `1..=limit`.
pub fn compute_a1(limit: usize) -> Result<ArithFnTable> {
    let lambda = sieve_standard(StandardFn::VonMangoldt, limit)?;
    let log = sieve_standard(StandardFn::Log, limit)?;
    Ok(dirichlet_convolve(&lambda, &log, limit)?.renamed("a1"))
}

/// a₂ = −Λ∗log∗log∗b on `1..=limit`, with `b` the mollifier coefficients.
pub fn compute_a2(limit: usize, b: &ArithFnTable) -> Result<ArithFnTable> {
    if limit == 0 {
        return Err(Error::EmptyTable);
    }
    b.require(limit)?;
    let lambda = sieve_standard(StandardFn::VonMangoldt, limit)?;
    let log = sieve_standard(StandardFn::Log, limit)?;
    let t = dirichlet_convolve(&lambda, &log, limit)?;
    let t = dirichlet_convolve(&t, &log, limit)?;
    let t = dirichlet_convolve(&t, b, limit)?;
    Ok(t.scaled(-1.0).renamed("a2"))
}
