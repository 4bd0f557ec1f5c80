//! Targets: pairs of squares `(a, b)` modulo `c` with `n + a ≡ b (mod c)`.
//!
//! Zero counts as a square throughout. `τ(n, c)` denotes the number of
//! targets; for odd `c` coprime to `n` it is multiplicative in `c`, has a
//! closed form at primes and a one-step recursion along prime powers.

mod bijection;
mod density;

use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::One;

use crate::ntheory::{
    add_mod, check_odd_modulus, check_odd_prime, coprime_residue, crt_product, is_square_mod,
    is_square_mod_prime_power, legendre_symbol, prime_power, square_table, FactoredModulus,
    ReduceMod,
};
use crate::{Error, Result};

pub use bijection::{gamma1, gamma2};
pub use density::{density_table, DensityRow, Fraction};

/// Largest modulus handled by direct enumeration.
pub const DIRECT_ENUMERATION_LIMIT: u64 = 10_000_000;

/// A target `(a, b, c)`: `a` and `b` are squares modulo `c` and
/// `n + a ≡ b (mod c)` for the `n` it was built for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Target {
    a: u64,
    b: u64,
    modulus: u64,
}

impl Target {
    /// Checks both squares (by factoring `c`) and the congruence.
    pub fn new(n: impl ReduceMod, a: u64, b: u64, c: u64) -> Result<Self> {
        check_odd_modulus(c)?;
        let invalid = Error::InvalidTarget { a, b, modulus: c };
        if a >= c || b >= c || add_mod(n.reduce_mod(c), a, c) != b {
            return Err(invalid);
        }
        let fm = FactoredModulus::from_u64(c)?;
        if !is_square_mod(a, &fm)? || !is_square_mod(b, &fm)? {
            return Err(invalid);
        }
        Ok(Self { a, b, modulus: c })
    }

    pub(crate) fn new_unchecked(a: u64, b: u64, modulus: u64) -> Self {
        Self { a, b, modulus }
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Whether this target certifies `n`, i.e. `n + a ≡ b (mod c)`.
    pub fn certifies(&self, n: impl ReduceMod) -> bool {
        add_mod(n.reduce_mod(self.modulus), self.a, self.modulus) == self.b
    }
}

fn check_direct_limit(c: u64) -> Result<()> {
    if c > DIRECT_ENUMERATION_LIMIT {
        return Err(Error::Unsupported(alloc::format!(
            "modulus {c} exceeds the direct enumeration limit {DIRECT_ENUMERATION_LIMIT}"
        )));
    }
    Ok(())
}

/// `T(n, c)` by scanning the squares modulo `c`, sorted by `a`.
pub fn enumerate_targets(n: impl ReduceMod, c: u64) -> Result<Vec<Target>> {
    check_odd_modulus(c)?;
    check_direct_limit(c)?;
    let squares = square_table(c)?;
    let n = n.reduce_mod(c);
    Ok((0..c)
        .filter(|&a| squares[a as usize] && squares[add_mod(n, a, c) as usize])
        .map(|a| Target::new_unchecked(a, add_mod(n, a, c), c))
        .collect())
}

/// `T(n, c)` assembled by CRT from direct enumeration at each prime power.
pub fn enumerate_targets_factored(n: impl ReduceMod, c: &FactoredModulus) -> Result<Vec<Target>> {
    let value = c
        .value_u64()
        .ok_or(Error::Overflow("modulus exceeds u64"))?;
    let mut a_values: Vec<u64> = alloc::vec![0];
    let mut acc_modulus = 1u64;
    for (_, _, pk) in c.prime_powers()? {
        let local: Vec<u64> = enumerate_targets(&n, pk)?.iter().map(Target::a).collect();
        a_values = crt_product(&a_values, acc_modulus, &local, pk)?;
        acc_modulus *= pk;
    }
    a_values.sort_unstable();
    let n = n.reduce_mod(value);
    Ok(a_values
        .into_iter()
        .map(|a| Target::new_unchecked(a, add_mod(n, a, value), value))
        .collect())
}

/// `τ(n, c)` by direct count; the oracle for every closed form below.
pub fn tau_brute(n: impl ReduceMod, c: u64) -> Result<u64> {
    check_odd_modulus(c)?;
    check_direct_limit(c)?;
    let squares = square_table(c)?;
    let n = n.reduce_mod(c);
    Ok((0..c)
        .filter(|&a| squares[a as usize] && squares[add_mod(n, a, c) as usize])
        .count() as u64)
}

/// Closed form of `τ(n, p)` for an odd prime `p ∤ n`.
pub fn tau_prime(n: impl ReduceMod, p: u64) -> Result<u64> {
    check_odd_prime(p)?;
    let n = coprime_residue(n, p)?;
    Ok(if p % 4 == 1 {
        (p - 1) / 4 + u64::from(legendre_symbol(n, p)? == 1)
    } else {
        (p - 3) / 4 + 1
    })
}

/// Number of elements of `{n, −n}` that are squares modulo `p`.
pub fn s_p(n: impl ReduceMod, p: u64) -> Result<u64> {
    check_odd_prime(p)?;
    let n = coprime_residue(n, p)?;
    let plus = u64::from(legendre_symbol(n, p)? == 1);
    let minus = u64::from(legendre_symbol(p - n, p)? == 1);
    Ok(plus + minus)
}

/// `τ(n, p^k)` by lifting from `k = 1`:
///
/// `τ(p^{j+1}) = (τ(p^j) − s)·p + s·(p+1)/2` for even `j`, and
/// `τ(p^{j+1}) = (τ(p^j) − s)·p + s` for odd `j`, with `s = s_p(n)`.
pub fn tau_prime_power(n: impl ReduceMod, p: u64, k: u32) -> Result<u64> {
    if k == 0 {
        return Err(Error::InvalidArgument("exponent must be positive".into()));
    }
    let mut tau = tau_prime(&n, p)?;
    let s = s_p(&n, p)?;
    let zero_lifts_even = (p - 1) / 2 + 1;
    for j in 1..k {
        let zero_lifts = if j % 2 == 0 { zero_lifts_even } else { 1 };
        tau = (tau - s)
            .checked_mul(p)
            .and_then(|t| t.checked_add(s * zero_lifts))
            .ok_or(Error::Overflow("τ exceeds u64"))?;
    }
    Ok(tau)
}

/// `τ(n, c)` as the product over the prime powers of `c`.
pub fn tau(n: impl ReduceMod, c: &FactoredModulus) -> Result<BigUint> {
    let mut acc = BigUint::one();
    for &(p, k) in c.factors() {
        acc *= tau_prime_power(&n, p, k)?;
    }
    Ok(acc)
}

/// All targets modulo `p^{k+1}` reducing to `t` modulo `p^k`.
pub fn lift_targets(n: impl ReduceMod, p: u64, k: u32, t: &Target) -> Result<Vec<Target>> {
    check_odd_prime(p)?;
    coprime_residue(&n, p)?;
    let pk = prime_power(p, k)?;
    if t.modulus != pk || !t.certifies(&n) {
        return Err(Error::InvalidTarget {
            a: t.a,
            b: t.b,
            modulus: t.modulus,
        });
    }
    let next = pk
        .checked_mul(p)
        .ok_or(Error::Overflow("prime power exceeds u64"))?;
    let n = n.reduce_mod(next);
    let mut out = Vec::new();
    for j in 0..p {
        let a = t.a + j * pk;
        let b = add_mod(n, a, next);
        if is_square_mod_prime_power(a, p, k + 1)? && is_square_mod_prime_power(b, p, k + 1)? {
            out.push(Target::new_unchecked(a, b, next));
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// `|{(x, y) ∈ [0, p)² : n + x² ≡ y²}|` by direct count.
pub fn count_solutions_brute(n: impl ReduceMod, p: u64) -> Result<u64> {
    check_odd_prime(p)?;
    let n = coprime_residue(n, p)?;
    // multiplicity of each residue as a square
    let mut roots = alloc::vec![0u64; p as usize];
    for y in 0..p {
        roots[(y * y % p) as usize] += 1;
    }
    Ok((0..p)
        .map(|x| roots[add_mod(n, x * x % p, p) as usize])
        .sum())
}
