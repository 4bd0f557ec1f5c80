//! `τ(n, c)/c` along odd primorials `c = 3·5·⋯·B`.

use alloc::vec::Vec;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;

use super::tau_prime;
use crate::ntheory::{legendre_symbol, odd_primes_up_to, ReduceMod};
use crate::Result;

/// A non-negative fraction kept in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fraction {
    pub numerator: BigUint,
    pub denominator: BigUint,
}

impl Fraction {
    pub fn new(numerator: BigUint, denominator: BigUint) -> Self {
        let g = numerator.gcd(&denominator);
        if g.is_one() || g == BigUint::ZERO {
            return Self {
                numerator,
                denominator,
            };
        }
        Self {
            numerator: numerator / &g,
            denominator: denominator / &g,
        }
    }
}

impl core::fmt::Display for Fraction {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator)
    }
}

/// One bound `B` of the density sweep.
///
/// `normalized` is `(τ/c)·4^ω / ln B` with `ω` the number of odd primes up to
/// `B`; `normalized_pi` uses `4^{ω+1}`, i.e. counts the prime 2 as well.
/// `adjusted` replaces each `τ(n, p)` by `τ(n, p) − (1 + (n/p))/2`. Rows where
/// some `p ≤ B` divides `n` are kept with `valid = false` and no values.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityRow {
    pub bound: u64,
    pub omega: usize,
    pub modulus: BigUint,
    pub valid: bool,
    pub hypothesis_holds: bool,
    pub tau: Option<BigUint>,
    pub ratio: Option<Fraction>,
    pub normalized: Option<f64>,
    pub normalized_pi: Option<f64>,
    pub adjusted: Option<Fraction>,
    pub adjusted_normalized: Option<f64>,
}

/// One row per odd prime `B ≤ b_max`.
pub fn density_table(n: impl ReduceMod, b_max: u64) -> Result<Vec<DensityRow>> {
    let mut rows = Vec::new();
    let mut modulus = BigUint::one();
    let mut tau = BigUint::one();
    let mut adjusted = BigUint::one();
    // running products of 4τ_p/p and 4(τ_p − δ_p)/p in floating point
    let mut scaled = 1.0f64;
    let mut scaled_adjusted = 1.0f64;
    let mut valid = true;
    let mut hypothesis = true;
    for (i, p) in odd_primes_up_to(b_max).into_iter().enumerate() {
        modulus *= p;
        let residue = n.reduce_mod(p);
        if residue == 0 {
            valid = false;
        }
        if valid {
            let symbol = legendre_symbol(residue, p)?;
            if p % 4 == 1 && symbol != -1 {
                hypothesis = false;
            }
            let t = tau_prime(residue, p)?;
            let t_adj = t - u64::from(symbol == 1);
            tau *= t;
            adjusted *= t_adj;
            scaled *= 4.0 * t as f64 / p as f64;
            scaled_adjusted *= 4.0 * t_adj as f64 / p as f64;
        }
        let log_b = libm::log(p as f64);
        rows.push(DensityRow {
            bound: p,
            omega: i + 1,
            modulus: modulus.clone(),
            valid,
            hypothesis_holds: valid && hypothesis,
            tau: valid.then(|| tau.clone()),
            ratio: valid.then(|| Fraction::new(tau.clone(), modulus.clone())),
            normalized: valid.then(|| scaled / log_b),
            normalized_pi: valid.then(|| 4.0 * scaled / log_b),
            adjusted: valid.then(|| Fraction::new(adjusted.clone(), modulus.clone())),
            adjusted_normalized: valid.then(|| scaled_adjusted / log_b),
        });
    }
    Ok(rows)
}
