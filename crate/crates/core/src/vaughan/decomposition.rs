use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::{VaughanConfig, TABLE_BUDGET};
use crate::arith::{sieve_standard, ArithFnTable, StandardFn};
use crate::error::{Error, Result};
use crate::mollifier::MollifierSpec;
use crate::numbers::binomial;
use crate::sum::add_compensated;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum SlotFn {
    Log,
    Mollifier,
    One,
    Mobius,
}

/// f₁ = f₂ = f₃ = log, f₄ = b, f₅ = f₆ = 1, f₇ = f₈ = f₉ = μ.
pub const SLOT_FUNCTIONS: [SlotFn; 9] = [
    SlotFn::Log,
    SlotFn::Log,
    SlotFn::Log,
    SlotFn::Mollifier,
    SlotFn::One,
    SlotFn::One,
    SlotFn::Mobius,
    SlotFn::Mobius,
    SlotFn::Mobius,
];

/// One factor of a term: f restricted to the integers in (lo, hi], or the
/// convolution identity when `identity` is set (nominal length 1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Slot {
    pub function: SlotFn,
    /// N_i: a power of two, y/2^h for the mollifier slot, or 1.
    pub nominal: f64,
    pub lo: u64,
    pub hi: u64,
    pub identity: bool,
}

impl Slot {
    fn identity(function: SlotFn) -> Self {
        Self {
            function,
            nominal: 1.0,
            lo: 0,
            hi: 1,
            identity: true,
        }
    }

    fn key(&self) -> Option<(u64, u64)> {
        (!self.identity).then_some((self.lo, self.hi))
    }

    /// Smallest integer the slot can contribute.
    pub fn min_support(&self) -> u64 {
        if self.identity {
            1
        } else {
            self.lo + 1
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecompositionTerm {
    pub slots: [Slot; 9],
    pub weight: f64,
}

impl DecompositionTerm {
    pub fn min_support(&self) -> u64 {
        self.slots.iter().map(Slot::min_support).product()
    }

    pub fn nominal_lengths(&self) -> [f64; 9] {
        self.slots.map(|s| s.nominal)
    }
}

/// Dyadic pieces a slot can take, identity included where it applies.
fn slot_choices(function: SlotFn, spec: &MollifierSpec, x: f64, cap: u64) -> Vec<Slot> {
    let mut out = Vec::new();
    let dyadic = |out: &mut Vec<Slot>, top: u64| {
        let mut hi = 2u64;
        while hi / 2 < cap.min(top) {
            out.push(Slot {
                function,
                nominal: hi as f64,
                lo: hi / 2,
                hi: hi.min(top),
                identity: false,
            });
            hi *= 2;
        }
    };
    match function {
        SlotFn::Log => dyadic(&mut out, u64::MAX),
        SlotFn::One => {
            out.push(Slot::identity(function));
            dyadic(&mut out, u64::MAX);
        }
        SlotFn::Mobius => {
            out.push(Slot::identity(function));
            dyadic(&mut out, x.floor() as u64);
        }
        SlotFn::Mollifier => {
            let y = spec.length();
            let mut h = 0;
            loop {
                let top = y / 2f64.powi(h);
                let (lo, hi) = ((top / 2.0).floor() as u64, top.floor() as u64);
                if hi < 1 {
                    break;
                }
                if hi > lo && lo < cap {
                    out.push(Slot {
                        function,
                        nominal: top,
                        lo,
                        hi,
                        identity: false,
                    });
                }
                h += 1;
            }
        }
    }
    out
}

/// All weighted dyadic terms whose convolutions sum to a₂ on n ≤ min(cap, X³).
///
/// Terms with the same supports are merged and exact cancellations dropped.
pub fn decompose_a2(spec: &MollifierSpec, config: &VaughanConfig, cap: usize) -> Result<Vec<DecompositionTerm>> {
    if config.r != 3 {
        return Err(Error::InvalidParameter(format!(
            "the nine-slot decomposition needs r = 3, got {}",
            config.r
        )));
    }
    let cap = (cap as f64).min(config.exact_range() * (1.0 + 1e-12)).floor() as u64;
    if cap == 0 {
        return Ok(Vec::new());
    }
    let choices: Vec<Vec<Slot>> = SLOT_FUNCTIONS
        .iter()
        .map(|&f| slot_choices(f, spec, config.x, cap))
        .collect();

    let mut merged: BTreeMap<[Option<(u64, u64)>; 9], DecompositionTerm> = BTreeMap::new();
    for j in 1..=3usize {
        // −Λ = Σ_j (−1)^{j−1}C(3,j) (−log)∗1^{j−1}∗μ_X^j, and a₂ = (−Λ)∗log∗log∗b.
        let weight = if j % 2 == 0 { 1.0 } else { -1.0 } * binomial(3, j as u64) as f64;
        let active = |i: usize| match i {
            0..=3 => true,
            4 | 5 => i - 4 < j - 1,
            _ => i - 6 < j,
        };
        let slot_options: Vec<Vec<Slot>> = (0..9)
            .map(|i| {
                if active(i) {
                    choices[i].clone()
                } else {
                    vec![Slot::identity(SLOT_FUNCTIONS[i])]
                }
            })
            .collect();
        let mut current = Vec::with_capacity(9);
        enumerate(&slot_options, cap, 1, &mut current, &mut |slots| {
            let slots: [Slot; 9] = slots.try_into().expect("nine slots");
            let key = slots.map(|s| s.key());
            merged
                .entry(key)
                .and_modify(|t| t.weight += weight)
                .or_insert(DecompositionTerm { slots, weight });
        });
    }
    Ok(merged.into_values().filter(|t| t.weight != 0.0).collect())
}

fn enumerate(
    options: &[Vec<Slot>],
    cap: u64,
    product: u64,
    current: &mut Vec<Slot>,
    emit: &mut impl FnMut(&[Slot]),
) {
    let i = current.len();
    if i == options.len() {
        emit(current);
        return;
    }
    for slot in &options[i] {
        let p = product.saturating_mul(slot.min_support());
        if p > cap {
            continue;
        }
        current.push(*slot);
        enumerate(options, cap, p, current, emit);
        current.pop();
    }
}

/// Function values needed to expand terms up to `limit`.
pub(crate) struct SlotValues {
    log: Vec<f64>,
    mobius: Vec<f64>,
    mollifier: Vec<f64>,
}

impl SlotValues {
    pub(crate) fn new(spec: &MollifierSpec, limit: usize) -> Result<Self> {
        let log = sieve_standard(StandardFn::Log, limit)?.into_values();
        let mobius = sieve_standard(StandardFn::Mobius, limit)?.into_values();
        let mollifier = (1..=spec.max_k().min(limit) as u64).map(|k| spec.coefficient(k)).collect();
        Ok(Self { log, mobius, mollifier })
    }

    /// f(n) for 1 ≤ n ≤ limit.
    pub(crate) fn value(&self, function: SlotFn, n: u64) -> f64 {
        let i = n as usize - 1;
        match function {
            SlotFn::Log => self.log[i],
            SlotFn::One => 1.0,
            SlotFn::Mobius => self.mobius[i],
            SlotFn::Mollifier => self.mollifier.get(i).copied().unwrap_or(0.0),
        }
    }

    /// Nonzero (n, f(n)) in the slot's support, n ≤ limit, ascending.
    pub(crate) fn support(&self, slot: &Slot, limit: u64) -> Vec<(u64, f64)> {
        if slot.identity {
            return vec![(1, 1.0)];
        }
        (slot.lo + 1..=slot.hi.min(limit))
            .map(|n| (n, self.value(slot.function, n)))
            .filter(|&(_, v)| v != 0.0)
            .collect()
    }
}

/// Adds scale·(g₁∗…∗g_k)(n) into `sums` for every n ≤ limit, where each g is
/// given by its sparse ascending support.
pub(crate) fn accumulate_product(
    factors: &[Vec<(u64, f64)>],
    scale: f64,
    limit: u64,
    sums: &mut [f64],
    comps: &mut [f64],
) {
    fn go(
        factors: &[Vec<(u64, f64)>],
        product: u64,
        value: f64,
        limit: u64,
        sums: &mut [f64],
        comps: &mut [f64],
    ) {
        match factors.split_first() {
            None => add_compensated(sums, comps, product as usize - 1, value),
            Some((head, rest)) => {
                for &(n, v) in head {
                    let p = product * n;
                    if p > limit {
                        break;
                    }
                    go(rest, p, value * v, limit, sums, comps);
                }
            }
        }
    }
    if factors.iter().any(Vec::is_empty) {
        return;
    }
    // Longest supports last keeps the inner loops tight.
    let mut ordered: Vec<&Vec<(u64, f64)>> = factors.iter().collect();
    ordered.sort_by_key(|f| f.len());
    let ordered: Vec<Vec<(u64, f64)>> = ordered.into_iter().cloned().collect();
    go(&ordered, 1, scale, limit, sums, comps);
}

/// (f₁∗…∗f₉)(n) on 1..=limit for one term, without its weight.
pub fn term_convolution(term: &DecompositionTerm, spec: &MollifierSpec, limit: usize) -> Result<ArithFnTable> {
    check_limit(limit)?;
    let values = SlotValues::new(spec, limit)?;
    let factors: Vec<_> = term.slots.iter().map(|s| values.support(s, limit as u64)).collect();
    let (mut sums, mut comps) = (vec![0.0; limit], vec![0.0; limit]);
    accumulate_product(&factors, 1.0, limit as u64, &mut sums, &mut comps);
    ArithFnTable::new("term", sums.iter().zip(&comps).map(|(s, c)| s + c).collect())
}

/// Σ_terms weight·(f₁∗…∗f₉)(n) on 1..=limit.
pub fn reconstruct(terms: &[DecompositionTerm], spec: &MollifierSpec, limit: usize) -> Result<ArithFnTable> {
    check_limit(limit)?;
    let values = SlotValues::new(spec, limit)?;
    const CHUNKS: usize = 64;
    let chunk = terms.len().div_ceil(CHUNKS).max(1);
    let partials: Vec<(Vec<f64>, Vec<f64>)> = terms
        .par_chunks(chunk)
        .map(|block| {
            let (mut sums, mut comps) = (vec![0.0; limit], vec![0.0; limit]);
            for term in block {
                let factors: Vec<_> = term.slots.iter().map(|s| values.support(s, limit as u64)).collect();
                accumulate_product(&factors, term.weight, limit as u64, &mut sums, &mut comps);
            }
            (sums, comps)
        })
        .collect();
    let (mut sums, mut comps) = (vec![0.0; limit], vec![0.0; limit]);
    for (s, c) in partials {
        for i in 0..limit {
            add_compensated(&mut sums, &mut comps, i, s[i]);
            add_compensated(&mut sums, &mut comps, i, c[i]);
        }
    }
    ArithFnTable::new("a2_reconstructed", sums.iter().zip(&comps).map(|(s, c)| s + c).collect())
}

fn check_limit(limit: usize) -> Result<()> {
    if limit == 0 {
        return Err(Error::InvalidParameter("limit must be at least 1".into()));
    }
    if limit > TABLE_BUDGET {
        return Err(Error::Budget(format!("limit {limit} exceeds {TABLE_BUDGET}")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::compute_a2;
    use crate::mollifier::MollifierPolynomial;

    fn setup(y: f64) -> MollifierSpec {
        MollifierSpec::with_length(y, 1e4, MollifierPolynomial::quadratic_for(0.3)).unwrap()
    }

    #[test]
    fn reconstruction_matches_a2() {
        let spec = setup(20.0);
        let config = VaughanConfig::new(3, 10.0).unwrap();
        let terms = decompose_a2(&spec, &config, 10_000).unwrap();
        let limit = 1000;
        let rebuilt = reconstruct(&terms, &spec, limit).unwrap();
        let a2 = compute_a2(limit, &spec.coefficient_table(limit).unwrap()).unwrap();
        assert_eq!(rebuilt.get(1), 0.0);
        for n in 1..=limit {
            let (r, e) = (rebuilt.get(n), a2.get(n));
            assert!((r - e).abs() <= 1e-9 * e.abs().max(1.0), "n = {n}: {r} vs {e}");
        }
    }

    #[test]
    fn slot_bounds_respected() {
        let spec = setup(20.0);
        let config = VaughanConfig::new(3, 10.0).unwrap();
        for t in decompose_a2(&spec, &config, 1000).unwrap() {
            assert!(t.slots[3].identity || t.slots[3].hi <= 20);
            for s in &t.slots[6..] {
                assert!(s.identity || s.hi <= 10);
            }
            assert!(t.min_support() <= 1000);
        }
    }

    #[test]
    fn other_r_rejected() {
        let spec = setup(20.0);
        assert!(decompose_a2(&spec, &VaughanConfig::new(2, 10.0).unwrap(), 100).is_err());
    }
}
