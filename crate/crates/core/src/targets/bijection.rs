//! The correspondence between the fundamental region of `H_{n,p}` and
//! `T(n, p)`.

use super::Target;
use crate::hyperbola::{distance_class, HyperbolaPoint};
use crate::ntheory::{
    add_mod, check_odd_prime, coprime_residue, mod_inverse, mul_mod, sqrt_mod_prime, sub_mod,
    ReduceMod,
};
use crate::{Error, Result};

/// `(x, y) ↦ (((x − y)/2)², ((x + y)/2)², p)`.
pub fn gamma1(pt: &HyperbolaPoint, n: impl ReduceMod) -> Result<Target> {
    let p = pt.modulus();
    check_odd_prime(p)?;
    let n = coprime_residue(n, p)?;
    let (x, y) = (pt.x(), pt.y());
    if pt.product() != n {
        return Err(Error::NotOnHyperbola { x, y, modulus: p });
    }
    if !pt.in_fundamental_region() {
        return Err(Error::OutsideRegion { x, y });
    }
    let inv4 = mod_inverse(4u64, p)?;
    let diff = sub_mod(x, y, p);
    let sum = add_mod(x, y, p);
    Ok(Target::new_unchecked(
        mul_mod(inv4, mul_mod(diff, diff, p), p),
        mul_mod(inv4, mul_mod(sum, sum, p), p),
        p,
    ))
}

/// The region point whose distance class is that of `u = 2α`, where `α` is
/// the root of `a` below `p/2`.
pub fn gamma2(t: &Target, n: impl ReduceMod) -> Result<HyperbolaPoint> {
    let p = t.modulus();
    check_odd_prime(p)?;
    let n = coprime_residue(n, p)?;
    if !t.certifies(n) {
        return Err(Error::InvalidTarget {
            a: t.a(),
            b: t.b(),
            modulus: p,
        });
    }
    let invalid = || Error::InvalidTarget {
        a: t.a(),
        b: t.b(),
        modulus: p,
    };
    let alpha = sqrt_mod_prime(t.a(), p)?.ok_or_else(invalid)?;
    let u = mul_mod(2, alpha, p);
    distance_class(n, p, u)?
        .points
        .into_iter()
        .find(HyperbolaPoint::in_fundamental_region)
        .ok_or_else(invalid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperbola::fundamental_region;
    use crate::targets::enumerate_targets;

    #[test]
    fn gamma1_examples() {
        let pt = HyperbolaPoint::new(1u64, 4, 2, 7).unwrap();
        assert_eq!(
            gamma1(&pt, 1u64).unwrap(),
            Target::new(1u64, 1, 2, 7).unwrap()
        );
        let pt = HyperbolaPoint::new(1u64, 1, 1, 7).unwrap();
        assert_eq!(
            gamma1(&pt, 1u64).unwrap(),
            Target::new(1u64, 0, 1, 7).unwrap()
        );
        let pt = HyperbolaPoint::new(2u64, 2, 1, 5).unwrap();
        assert_eq!(
            gamma1(&pt, 2u64).unwrap(),
            Target::new(2u64, 4, 1, 5).unwrap()
        );
    }

    #[test]
    fn gamma1_rejects_bad_points() {
        let outside = HyperbolaPoint::new(1u64, 2, 4, 7).unwrap();
        assert_eq!(
            gamma1(&outside, 1u64),
            Err(Error::OutsideRegion { x: 2, y: 4 })
        );
        let pt = HyperbolaPoint::new(1u64, 4, 2, 7).unwrap();
        assert!(matches!(
            gamma1(&pt, 3u64),
            Err(Error::NotOnHyperbola { .. })
        ));
    }

    #[test]
    fn gamma2_examples() {
        let t = Target::new(1u64, 1, 2, 7).unwrap();
        assert_eq!(
            gamma2(&t, 1u64).unwrap(),
            HyperbolaPoint::new(1u64, 4, 2, 7).unwrap()
        );
        let t = Target::new(1u64, 0, 1, 7).unwrap();
        assert_eq!(
            gamma2(&t, 1u64).unwrap(),
            HyperbolaPoint::new(1u64, 1, 1, 7).unwrap()
        );
        let t = Target::new(2u64, 4, 1, 5).unwrap();
        assert_eq!(
            gamma2(&t, 2u64).unwrap(),
            HyperbolaPoint::new(2u64, 2, 1, 5).unwrap()
        );
    }

    #[test]
    fn round_trips_small_primes() {
        for p in [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
            for n in 1..p {
                for pt in fundamental_region(n, p).unwrap() {
                    assert_eq!(gamma2(&gamma1(&pt, n).unwrap(), n).unwrap(), pt);
                }
                for t in enumerate_targets(n, p).unwrap() {
                    assert_eq!(gamma1(&gamma2(&t, n).unwrap(), n).unwrap(), t);
                }
            }
        }
    }
}
