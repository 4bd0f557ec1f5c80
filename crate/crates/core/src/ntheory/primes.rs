use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use super::roots::{isqrt, prime_power};
use super::{mul_mod, pow_mod};
use crate::{Error, Result};

/// Deterministic Miller–Rabin for the full `u64` range.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for p in WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let twos = (n - 1).trailing_zeros();
    let d = (n - 1) >> twos;
    'witness: for a in WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..twos {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Odd primes `3, 5, 7, …` up to and including `limit`, by an odds-only sieve.
pub fn odd_primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 3 {
        return Vec::new();
    }
    // index i stands for 2i + 1
    let len = ((limit - 1) / 2 + 1) as usize;
    let mut composite = vec![false; len];
    let mut i = 1;
    while (2 * i + 1) * (2 * i + 1) <= limit as usize {
        if !composite[i] {
            let p = 2 * i + 1;
            let mut j = p * p / 2;
            while j < len {
                composite[j] = true;
                j += p;
            }
        }
        i += 1;
    }
    (1..len)
        .filter(|&i| !composite[i])
        .map(|i| 2 * i as u64 + 1)
        .collect()
}

/// An odd modulus carried together with its prime-power factorization.
///
/// The empty factorization stands for the modulus `1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoredModulus {
    value: BigUint,
    factors: Vec<(u64, u32)>,
}

impl FactoredModulus {
    /// Builds a modulus from `(prime, exponent)` pairs with strictly increasing
    /// odd primes and positive exponents.
    pub fn new(factors: Vec<(u64, u32)>) -> Result<Self> {
        let mut value = BigUint::one();
        let mut previous = 0u64;
        for &(p, k) in &factors {
            if p % 2 == 0 || !is_prime(p) {
                return Err(Error::InvalidFactorization(format!(
                    "{p} is not an odd prime"
                )));
            }
            if p <= previous {
                return Err(Error::InvalidFactorization(String::from(
                    "primes must be strictly increasing",
                )));
            }
            if k == 0 {
                return Err(Error::InvalidFactorization(format!("zero exponent on {p}")));
            }
            value *= BigUint::from(p).pow(k);
            previous = p;
        }
        Ok(Self { value, factors })
    }

    /// Factors a small odd modulus by trial division.
    pub fn from_u64(c: u64) -> Result<Self> {
        if c == 0 || c.is_multiple_of(2) {
            return Err(Error::InvalidModulus(c));
        }
        let mut factors = Vec::new();
        let mut rest = c;
        let mut d = 3u64;
        while d.saturating_mul(d) <= rest {
            if rest.is_multiple_of(d) {
                let mut k = 0;
                while rest.is_multiple_of(d) {
                    rest /= d;
                    k += 1;
                }
                factors.push((d, k));
            }
            d += 2;
        }
        if rest > 1 {
            factors.push((rest, 1));
        }
        Ok(Self {
            value: BigUint::from(c),
            factors,
        })
    }

    /// Product of the given distinct odd primes.
    pub fn squarefree(primes: &[u64]) -> Result<Self> {
        Self::new(primes.iter().map(|&p| (p, 1)).collect())
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn value_u64(&self) -> Option<u64> {
        self.value.to_u64()
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// `(p, k, p^k)` for every factor; fails if some `p^k` exceeds `u64`.
    pub fn prime_powers(&self) -> Result<Vec<(u64, u32, u64)>> {
        self.factors
            .iter()
            .map(|&(p, k)| Ok((p, k, prime_power(p, k)?)))
            .collect()
    }
}

impl fmt::Display for FactoredModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (i, &(p, k)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if k == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{k}")?;
            }
        }
        Ok(())
    }
}

/// The split `c′·c` of the product of the first `m` odd primes used by the
/// target-guided search: `c′ = p₁⋯p_r` and `c = p_{r+1}⋯p_m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimorialSplit {
    pub m: usize,
    pub r: usize,
    /// `p₁⋯p_r`
    pub c_prime: u64,
    /// `p_{r+1}⋯p_m`
    pub c_main: u64,
    pub primes: Vec<u64>,
}

impl PrimorialSplit {
    /// `c′·c`, the modulus of the combined residue set.
    pub fn modulus(&self) -> u64 {
        self.c_prime * self.c_main
    }

    pub fn prime_primes(&self) -> &[u64] {
        &self.primes[..self.r]
    }

    pub fn main_primes(&self) -> &[u64] {
        &self.primes[self.r..]
    }
}

/// Largest run of consecutive odd primes `3·5·⋯·p_m ≤ ⌊√n⌋`, split at `r`.
///
/// `m ≥ 3` is required unless `relaxed`, which accepts `m = 2`. The split
/// index defaults to `⌊m/2⌋`; an override must satisfy `0 < r < m`.
pub fn odd_primorial_split(
    n: &BigUint,
    r_override: Option<usize>,
    relaxed: bool,
) -> Result<PrimorialSplit> {
    let root = isqrt(n);
    let mut primes = Vec::new();
    let mut product = BigUint::one();
    let mut candidate = 3u64;
    loop {
        if is_prime(candidate) {
            let next = &product * candidate;
            if next > root {
                break;
            }
            product = next;
            primes.push(candidate);
        }
        candidate += 2;
    }
    let m = primes.len();
    let min_m = if relaxed { 2 } else { 3 };
    if m < min_m {
        return Err(Error::Unsupported(format!(
            "n = {n} is too small for a primorial split with m ≥ {min_m}; use trial division"
        )));
    }
    if product.to_u64().is_none() {
        return Err(Error::Overflow("primorial split modulus exceeds u64"));
    }
    let r = r_override.unwrap_or(m / 2);
    if r == 0 || r >= m {
        return Err(Error::InvalidArgument(format!(
            "split index r = {r} must satisfy 0 < r < m = {m}"
        )));
    }
    let c_prime = primes[..r].iter().product();
    let c_main = primes[r..].iter().product();
    Ok(PrimorialSplit {
        m,
        r,
        c_prime,
        c_main,
        primes,
    })
}
