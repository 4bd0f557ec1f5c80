use super::{check_odd_modulus, pow_mod, ReduceMod};
use crate::{Error, Result};

/// Legendre symbol `(a/p)` by Euler's criterion.
///
/// `p` must be an odd prime; primality is the caller's responsibility (it is
/// not re-checked on this hot path), but even or trivial moduli are rejected.
pub fn legendre_symbol(a: impl ReduceMod, p: u64) -> Result<i8> {
    check_odd_modulus(p)?;
    let a = a.reduce_mod(p);
    if a == 0 {
        return Ok(0);
    }
    Ok(if pow_mod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    })
}

/// Jacobi symbol `(a/c)` for odd `c ≥ 1`, via quadratic reciprocity.
pub fn jacobi_symbol(a: impl ReduceMod, c: u64) -> Result<i8> {
    if c == 0 || c.is_multiple_of(2) {
        return Err(Error::InvalidModulus(c));
    }
    let mut a = a.reduce_mod(c);
    let mut c = c;
    let mut sign = 1i8;
    while a != 0 {
        let twos = a.trailing_zeros();
        a >>= twos;
        // (2/c) = -1 iff c ≡ 3, 5 (mod 8)
        if twos % 2 == 1 && matches!(c % 8, 3 | 5) {
            sign = -sign;
        }
        if a % 4 == 3 && c % 4 == 3 {
            sign = -sign;
        }
        core::mem::swap(&mut a, &mut c);
        a %= c;
    }
    Ok(if c == 1 { sign } else { 0 })
}
