//! Modular-arithmetic primitives shared by the rest of the crate.
//!
//! Moduli are machine words (`u64`), with intermediate products taken in
//! `u128`. Values that can grow without bound (the integer being factored,
//! products of many primes) use [`num_bigint`] types.

mod primes;
mod roots;
mod symbol;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::{Error, Result};

pub use primes::{
    is_prime, odd_primes_up_to, odd_primorial_split, FactoredModulus, PrimorialSplit,
};
pub(crate) use roots::prime_power;
pub use roots::{
    is_perfect_square, is_square_mod, is_square_mod_prime_power, isqrt, isqrt_signed,
    sqrt_mod_composite, sqrt_mod_prime, sqrt_mod_prime_power, square_table, squares_mod,
};
pub use symbol::{jacobi_symbol, legendre_symbol};

/// Reduction of an integer of any supported width to a residue in `[0, m)`.
///
/// Implemented for the primitive integers used across the crate and for
/// `BigInt`/`BigUint`, so operations that take "an integer `n`" accept any of
/// them. Negative values reduce to their non-negative representative.
pub trait ReduceMod {
    /// `m` must be non-zero.
    fn reduce_mod(&self, m: u64) -> u64;
}

impl ReduceMod for u64 {
    fn reduce_mod(&self, m: u64) -> u64 {
        self % m
    }
}

impl ReduceMod for u32 {
    fn reduce_mod(&self, m: u64) -> u64 {
        u64::from(*self) % m
    }
}

impl ReduceMod for i64 {
    fn reduce_mod(&self, m: u64) -> u64 {
        i128::from(*self).rem_euclid(i128::from(m)) as u64
    }
}

impl ReduceMod for i32 {
    fn reduce_mod(&self, m: u64) -> u64 {
        i64::from(*self).reduce_mod(m)
    }
}

impl ReduceMod for BigUint {
    fn reduce_mod(&self, m: u64) -> u64 {
        (self % m).to_u64().expect("remainder below a u64 modulus")
    }
}

impl ReduceMod for BigInt {
    fn reduce_mod(&self, m: u64) -> u64 {
        self.mod_floor(&BigInt::from(m))
            .to_u64()
            .expect("floor remainder is in [0, m)")
    }
}

impl<T: ReduceMod + ?Sized> ReduceMod for &T {
    fn reduce_mod(&self, m: u64) -> u64 {
        (**self).reduce_mod(m)
    }
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(m)) as u64
}

#[inline]
pub(crate) fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    ((u128::from(a) + u128::from(b)) % u128::from(m)) as u64
}

#[inline]
pub(crate) fn sub_mod(a: u64, b: u64, m: u64) -> u64 {
    let (a, b) = (a % m, b % m);
    if a >= b {
        a - b
    } else {
        m - (b - a)
    }
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub(crate) fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// Rejects even moduli and moduli below 3.
pub(crate) fn check_odd_modulus(c: u64) -> Result<()> {
    if c < 3 || c.is_multiple_of(2) {
        return Err(Error::InvalidModulus(c));
    }
    Ok(())
}

/// Rejects anything that is not an odd prime.
pub(crate) fn check_odd_prime(p: u64) -> Result<()> {
    check_odd_modulus(p)?;
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(())
}

/// Reduces `n` modulo `c` and checks `gcd(n, c) = 1`.
pub(crate) fn coprime_residue(n: impl ReduceMod, c: u64) -> Result<u64> {
    let r = n.reduce_mod(c);
    let g = gcd_u64(r, c);
    if g != 1 {
        return Err(Error::NotCoprime { gcd: g, modulus: c });
    }
    Ok(r)
}

/// Inverse of `a` modulo `c`.
pub fn mod_inverse(a: impl ReduceMod, c: u64) -> Result<u64> {
    if c == 0 {
        return Err(Error::InvalidArgument("modulus must be positive".into()));
    }
    let a = a.reduce_mod(c);
    let (mut old_r, mut r) = (i128::from(a), i128::from(c));
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 && c != 1 {
        return Err(Error::NotInvertible { a, modulus: c });
    }
    Ok(old_s.rem_euclid(i128::from(c)) as u64)
}

/// The unique `x` in `[0, m1·m2)` with `x ≡ r1 (mod m1)` and `x ≡ r2 (mod m2)`.
pub fn crt_pair(r1: u64, m1: u64, r2: u64, m2: u64) -> Result<u64> {
    if m1 == 0 || m2 == 0 {
        return Err(Error::InvalidArgument("moduli must be positive".into()));
    }
    if gcd_u64(m1, m2) != 1 {
        return Err(Error::NonCoprimeModuli(m1, m2));
    }
    let m = m1
        .checked_mul(m2)
        .ok_or(Error::Overflow("CRT modulus exceeds u64"))?;
    let (r1, r2) = (r1 % m1, r2 % m2);
    let inv = mod_inverse(m1, m2)?;
    let t = mul_mod(sub_mod(r2, r1, m2), inv, m2);
    Ok(((u128::from(r1) + u128::from(m1) * u128::from(t)) % u128::from(m)) as u64)
}

/// Combines residue lists for two coprime moduli into the full CRT product
/// list (unsorted).
pub(crate) fn crt_product(
    left: &[u64],
    m1: u64,
    right: &[u64],
    m2: u64,
) -> Result<alloc::vec::Vec<u64>> {
    if gcd_u64(m1, m2) != 1 {
        return Err(Error::NonCoprimeModuli(m1, m2));
    }
    let m = m1
        .checked_mul(m2)
        .ok_or(Error::Overflow("CRT modulus exceeds u64"))?;
    let inv = mod_inverse(m1, m2)?;
    let mut out = alloc::vec::Vec::with_capacity(left.len() * right.len());
    for &r1 in left {
        for &r2 in right {
            let t = mul_mod(sub_mod(r2, r1, m2), inv, m2);
            out.push(((u128::from(r1) + u128::from(m1) * u128::from(t)) % u128::from(m)) as u64);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_examples() {
        assert_eq!(mod_inverse(1u64, 7).unwrap(), 1);
        assert_eq!(mod_inverse(4u64, 7).unwrap(), 2);
        assert_eq!(
            mod_inverse(5u64, 15),
            Err(Error::NotInvertible { a: 5, modulus: 15 })
        );
        assert_eq!(mod_inverse(-3i64, 7).unwrap(), 2);
    }

    #[test]
    fn crt_examples() {
        assert_eq!(crt_pair(0, 3, 0, 5).unwrap(), 0);
        assert_eq!(crt_pair(1, 3, 4, 5).unwrap(), 4);
        assert_eq!(crt_pair(2, 3, 0, 5).unwrap(), 5);
        assert_eq!(crt_pair(1, 3, 1, 9), Err(Error::NonCoprimeModuli(3, 9)));
    }

    #[test]
    fn crt_agrees_with_scan() {
        for m1 in 1..40u64 {
            for m2 in 1..40u64 {
                if gcd_u64(m1, m2) != 1 {
                    continue;
                }
                for x in 0..m1 * m2 {
                    assert_eq!(crt_pair(x % m1, m1, x % m2, m2).unwrap(), x);
                }
            }
        }
    }

    #[test]
    fn reduce_negative_bigint() {
        let n = BigInt::from(-8);
        assert_eq!(n.reduce_mod(7), 6);
        assert_eq!((-8i64).reduce_mod(7), 6);
    }
}
