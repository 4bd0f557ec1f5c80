use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use super::symbol::legendre_symbol;
use super::{check_odd_modulus, crt_product, mul_mod, pow_mod, sub_mod, FactoredModulus};
use crate::{Error, Result};

/// Square root of `a` modulo an odd prime `p`, by Tonelli–Shanks.
///
/// Returns the smaller of the two roots (`0` for `a = 0`) or `None` when `a`
/// is a non-residue. The auxiliary non-residue is the first of `2, 3, 4, …`
/// that fails Euler's criterion, so results are reproducible.
pub fn sqrt_mod_prime(a: u64, p: u64) -> Result<Option<u64>> {
    check_odd_modulus(p)?;
    let a = a % p;
    if a == 0 {
        return Ok(Some(0));
    }
    if legendre_symbol(a, p)? != 1 {
        return Ok(None);
    }
    let root = if p % 4 == 3 {
        pow_mod(a, (p + 1) / 4, p)
    } else {
        tonelli_shanks(a, p)
    };
    Ok(Some(root.min(p - root)))
}

fn tonelli_shanks(a: u64, p: u64) -> u64 {
    let twos = (p - 1).trailing_zeros();
    let odd = (p - 1) >> twos;
    let mut z = 2;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = twos;
    let mut c = pow_mod(z, odd, p);
    let mut t = pow_mod(a, odd, p);
    let mut r = pow_mod(a, odd.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1u64 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    r
}

pub(crate) fn prime_power(p: u64, k: u32) -> Result<u64> {
    p.checked_pow(k)
        .ok_or(Error::Overflow("prime power exceeds u64"))
}

/// Lifts a unit root `w` of `u` modulo `p` to a root modulo `p^e`.
fn hensel_lift(u: u64, mut w: u64, p: u64, e: u32) -> u64 {
    let mut modulus = p;
    for _ in 1..e {
        modulus *= p;
        // w ← w − (w² − u)/(2w)
        let f = sub_mod(mul_mod(w, w, modulus), u % modulus, modulus);
        let inv = super::mod_inverse(mul_mod(2, w, modulus), modulus)
            .expect("2w is a unit modulo an odd prime power");
        w = sub_mod(w, mul_mod(f, inv, modulus), modulus);
    }
    w
}

/// All square roots of `a` modulo `p^k`, sorted ascending.
///
/// Handles `p | a`: with `a = p^v·u` and `p ∤ u`, roots exist only for even
/// `v`, and then number `2·p^{v/2}`. For `a ≡ 0` the roots are the multiples
/// of `p^{⌈k/2⌉}`.
pub fn sqrt_mod_prime_power(a: u64, p: u64, k: u32) -> Result<Vec<u64>> {
    check_odd_modulus(p)?;
    if k == 0 {
        return Err(Error::InvalidArgument("exponent must be positive".into()));
    }
    let modulus = prime_power(p, k)?;
    let a = a % modulus;
    if a == 0 {
        let step = prime_power(p, k.div_ceil(2))?;
        return Ok((0..modulus / step).map(|j| j * step).collect());
    }
    let mut v = 0u32;
    let mut u = a;
    while u.is_multiple_of(p) {
        u /= p;
        v += 1;
    }
    if v % 2 == 1 {
        return Ok(Vec::new());
    }
    let Some(w0) = sqrt_mod_prime(u % p, p)? else {
        return Ok(Vec::new());
    };
    let s = v / 2;
    let unit_modulus = prime_power(p, k - v)?;
    let w = hensel_lift(u, w0, p, k - v);
    let scale = prime_power(p, s)?;
    let mut out = Vec::with_capacity(2 * scale as usize);
    for base in [w, unit_modulus - w] {
        for j in 0..scale {
            // x = p^s (base + j·p^{k−v})
            let inner = base + j * unit_modulus;
            out.push(mul_mod(scale, inner, modulus));
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// All square roots of `a` modulo a factored odd modulus, sorted ascending.
pub fn sqrt_mod_composite(a: u64, c: &FactoredModulus) -> Result<Vec<u64>> {
    let value = c
        .value_u64()
        .ok_or(Error::Overflow("modulus exceeds u64"))?;
    let mut acc: Vec<u64> = vec![0];
    let mut acc_modulus = 1u64;
    for &(p, k) in c.factors() {
        let pk = prime_power(p, k)?;
        let roots = sqrt_mod_prime_power(a % value % pk, p, k)?;
        if roots.is_empty() {
            return Ok(Vec::new());
        }
        acc = crt_product(&acc, acc_modulus, &roots, pk)?;
        acc_modulus *= pk;
    }
    acc.sort_unstable();
    Ok(acc)
}

/// Membership table of `{x² mod c}` (zero included), built by squaring.
pub fn square_table(c: u64) -> Result<Vec<bool>> {
    check_odd_modulus(c)?;
    let mut table = vec![false; c as usize];
    for x in 0..=c / 2 {
        table[mul_mod(x, x, c) as usize] = true;
    }
    Ok(table)
}

/// The set `{x² mod c : 0 ≤ x < c}`, zero included. Intended for small `c`.
pub fn squares_mod(c: u64) -> Result<BTreeSet<u64>> {
    Ok(square_table(c)?
        .iter()
        .enumerate()
        .filter(|(_, &s)| s)
        .map(|(a, _)| a as u64)
        .collect())
}

/// Whether `a` is a square modulo `p^k` (zero counts as a square).
pub fn is_square_mod_prime_power(a: u64, p: u64, k: u32) -> Result<bool> {
    let modulus = prime_power(p, k)?;
    let mut a = a % modulus;
    if a == 0 {
        return Ok(true);
    }
    let mut v = 0;
    while a.is_multiple_of(p) {
        a /= p;
        v += 1;
    }
    Ok(v % 2 == 0 && legendre_symbol(a, p)? == 1)
}

/// Whether `a` is a square modulo `c` (zero counts as a square).
pub fn is_square_mod(a: u64, c: &FactoredModulus) -> Result<bool> {
    for &(p, k) in c.factors() {
        if !is_square_mod_prime_power(a, p, k)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `⌊√n⌋` by integer Newton iteration.
pub fn isqrt(n: &BigUint) -> BigUint {
    if n < &BigUint::from(2u32) {
        return n.clone();
    }
    // 2^⌈bits/2⌉ is an upper bound; the iteration decreases monotonically to ⌊√n⌋.
    let mut x = BigUint::one() << n.bits().div_ceil(2);
    loop {
        let y = (&x + n / &x) >> 1u32;
        if y >= x {
            return x;
        }
        x = y;
    }
}

/// `⌊√n⌋` for a signed input; negative input is an error.
pub fn isqrt_signed(n: &BigInt) -> Result<BigUint> {
    match n.to_biguint() {
        Some(u) => Ok(isqrt(&u)),
        None => Err(Error::NegativeInput),
    }
}

/// Exact square root of `n` if `n` is a perfect square.
pub fn is_perfect_square(n: &BigUint) -> Option<BigUint> {
    if n.is_zero() {
        return Some(BigUint::zero());
    }
    // squares mod 16 are {0, 1, 4, 9}
    let low = n.iter_u32_digits().next().unwrap_or(0) & 15;
    if !matches!(low, 0 | 1 | 4 | 9) {
        return None;
    }
    let r = isqrt(n);
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}
