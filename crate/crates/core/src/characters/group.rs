use num_complex::Complex64;

use super::e_frac;
use crate::numbers::{divisors, factorize, gcd, lcm, mobius, pow_mod, totient};

/// The unit group (Z/qZ)^× written as a product of cyclic factors, with the
/// discrete-log vector of every unit.
#[derive(Debug, Clone)]
pub struct CharacterGroup {
    modulus: u64,
    generators: Vec<u64>,
    orders: Vec<u64>,
    exponent: u64,
    logs: Vec<Option<Vec<u64>>>,
}

/// A character mod q, stored exactly: χ(a) = e(numerator(a)/exponent) on
/// units and 0 elsewhere. Complex values are materialized from the exact
/// exponents.
#[derive(Debug, Clone, PartialEq)]
pub struct DirichletCharacter {
    modulus: u64,
    exponent: u64,
    numerators: Vec<Option<u64>>,
    values: Vec<Complex64>,
    conductor: u64,
    index: Vec<u64>,
}

impl CharacterGroup {
    pub fn new(modulus: u64) -> Self {
        assert!(modulus >= 1, "modulus must be positive");
        let mut generators = Vec::new();
        let mut orders = Vec::new();
        for (p, e) in factorize(modulus) {
            let pe = p.pow(e);
            let rest = modulus / pe;
            let lift = |g: u64| crt_lift(g, pe, rest);
            if p == 2 {
                if e == 2 {
                    generators.push(lift(3));
                    orders.push(2);
                } else if e >= 3 {
                    generators.push(lift(pe - 1));
                    orders.push(2);
                    generators.push(lift(5));
                    orders.push(pe / 4);
                }
            } else {
                let order = pe / p * (p - 1);
                generators.push(lift(primitive_root(pe, order)));
                orders.push(order);
            }
        }
        let exponent = orders.iter().fold(1, |acc, &o| lcm(acc, o));

        let q = modulus as usize;
        let mut logs: Vec<Option<Vec<u64>>> = vec![None; q];
        let mut exps = vec![0u64; generators.len()];
        loop {
            let a = generators
                .iter()
                .zip(&exps)
                .fold(1 % modulus, |acc, (&g, &k)| {
                    (acc as u128 * pow_mod(g, k, modulus) as u128 % modulus as u128) as u64
                });
            logs[a as usize] = Some(exps.clone());
            if !increment(&mut exps, &orders) {
                break;
            }
        }
        debug_assert_eq!(logs.iter().filter(|l| l.is_some()).count() as u64, totient(modulus));
        Self {
            modulus,
            generators,
            orders,
            exponent,
            logs,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// φ(q).
    pub fn order(&self) -> u64 {
        self.orders.iter().product()
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    /// The character with exponent vector `index` (j_i mod the i-th cyclic order).
    pub fn character(&self, index: &[u64]) -> DirichletCharacter {
        assert_eq!(index.len(), self.orders.len());
        let numerators: Vec<Option<u64>> = self
            .logs
            .iter()
            .map(|log| {
                log.as_ref().map(|l| {
                    l.iter()
                        .zip(index)
                        .zip(&self.orders)
                        .map(|((&li, &ji), &ni)| li * ji % ni * (self.exponent / ni))
                        .sum::<u64>()
                        % self.exponent
                })
            })
            .collect();
        DirichletCharacter::from_numerators(self.modulus, self.exponent, numerators, index.to_vec())
    }

    /// All φ(q) characters, in lexicographic order of their exponent vectors.
    pub fn characters(&self) -> Vec<DirichletCharacter> {
        let mut out = Vec::with_capacity(self.order() as usize);
        let mut index = vec![0u64; self.orders.len()];
        loop {
            out.push(self.character(&index));
            if !increment(&mut index, &self.orders) {
                break;
            }
        }
        out
    }
}

impl DirichletCharacter {
    fn from_numerators(modulus: u64, exponent: u64, numerators: Vec<Option<u64>>, index: Vec<u64>) -> Self {
        let values = numerators
            .iter()
            .map(|n| n.map_or(Complex64::new(0.0, 0.0), |k| root_of_unity(k, exponent)))
            .collect();
        let conductor = conductor_of(modulus, &numerators);
        Self {
            modulus,
            exponent,
            numerators,
            values,
            conductor,
            index,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor == self.modulus
    }

    pub fn is_trivial(&self) -> bool {
        self.numerators.iter().all(|n| n.map_or(true, |k| k == 0))
    }

    /// Exponent vector labelling the character within its group.
    pub fn index(&self) -> &[u64] {
        &self.index
    }

    /// χ(a) for any integer a (negative arguments reduce mod q).
    #[inline]
    pub fn value(&self, a: i64) -> Complex64 {
        self.values[a.rem_euclid(self.modulus as i64) as usize]
    }

    /// Exact exponent k with χ(a) = e(k/exponent), or None off the units.
    pub fn exact_value(&self, a: i64) -> Option<(u64, u64)> {
        self.numerators[a.rem_euclid(self.modulus as i64) as usize].map(|k| (k, self.exponent))
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn conj(&self) -> Self {
        let numerators = self
            .numerators
            .iter()
            .map(|n| n.map(|k| (self.exponent - k) % self.exponent))
            .collect();
        let mut c = Self::from_numerators(self.modulus, self.exponent, numerators, Vec::new());
        c.index = self.index.clone();
        c.index.iter_mut().for_each(|j| *j = j.wrapping_neg());
        c
    }

    /// Pointwise product; both characters must share a modulus.
    pub fn mul(&self, other: &Self) -> Option<Self> {
        if self.modulus != other.modulus {
            return None;
        }
        let exponent = lcm(self.exponent, other.exponent);
        let (sa, sb) = (exponent / self.exponent, exponent / other.exponent);
        let numerators = self
            .numerators
            .iter()
            .zip(&other.numerators)
            .map(|(a, b)| match (a, b) {
                (Some(x), Some(y)) => Some((x * sa + y * sb) % exponent),
                _ => None,
            })
            .collect();
        Some(Self::from_numerators(self.modulus, exponent, numerators, Vec::new()))
    }

    /// Same values on every residue (ignores labels).
    pub fn same_values(&self, other: &Self) -> bool {
        self.modulus == other.modulus
            && self.numerators.iter().zip(&other.numerators).all(|(a, b)| match (a, b) {
                (Some(x), Some(y)) => x * other.exponent == y * self.exponent,
                (None, None) => true,
                _ => false,
            })
    }
}

/// Every character mod q.
pub fn enumerate_characters(modulus: u64) -> Vec<DirichletCharacter> {
    CharacterGroup::new(modulus).characters()
}

pub fn primitive_characters(modulus: u64) -> Vec<DirichletCharacter> {
    enumerate_characters(modulus)
        .into_iter()
        .filter(DirichletCharacter::is_primitive)
        .collect()
}

/// Σ_{d|q} μ(q/d)φ(d).
pub fn primitive_character_count(modulus: u64) -> u64 {
    let s: i64 = divisors(modulus)
        .into_iter()
        .map(|d| mobius(modulus / d) * totient(d) as i64)
        .sum();
    s as u64
}

fn root_of_unity(k: u64, n: u64) -> Complex64 {
    if k == 0 {
        return Complex64::new(1.0, 0.0);
    }
    if 4 * k == n {
        return Complex64::new(0.0, 1.0);
    }
    if 2 * k == n {
        return Complex64::new(-1.0, 0.0);
    }
    if 4 * k == 3 * n {
        return Complex64::new(0.0, -1.0);
    }
    e_frac(k as i64, n)
}

/// Smallest d | q such that χ is trivial on units a ≡ 1 (mod d).
fn conductor_of(modulus: u64, numerators: &[Option<u64>]) -> u64 {
    for d in divisors(modulus) {
        let induced = numerators
            .iter()
            .enumerate()
            .all(|(a, n)| match n {
                Some(k) if a as u64 % d == 1 % d => *k == 0,
                _ => true,
            });
        if induced {
            return d;
        }
    }
    modulus
}

fn crt_lift(g: u64, pe: u64, rest: u64) -> u64 {
    // x ≡ g (mod pe), x ≡ 1 (mod rest).
    let q = pe * rest;
    (0..rest)
        .map(|t| g + t * pe)
        .find(|x| x % rest == 1 % rest)
        .expect("coprime moduli always admit a lift")
        % q
}

fn primitive_root(pe: u64, order: u64) -> u64 {
    let prime_factors: Vec<u64> = factorize(order).into_iter().map(|(p, _)| p).collect();
    (2..pe)
        .find(|&g| gcd(g, pe) == 1 && prime_factors.iter().all(|&r| pow_mod(g, order / r, pe) != 1))
        .unwrap_or(1)
}

fn increment(digits: &mut [u64], bases: &[u64]) -> bool {
    for (d, &b) in digits.iter_mut().zip(bases) {
        *d += 1;
        if *d < b {
            return true;
        }
        *d = 0;
    }
    false
}
