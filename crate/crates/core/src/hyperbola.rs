//! The modular hyperbola `H_{n,c} = {(x, y) ∈ [0, c)² : xy ≡ n (mod c)}`.
//!
//! Points are symmetric under the reflections `(x, y) ↦ (y, x)` and
//! `(x, y) ↦ (c − x, c − y)`. For a prime modulus every orbit meets the closed
//! fundamental region `0 ≤ y ≤ min(x, p − x)` exactly once, and the distance
//! `|x − y|` of that representative identifies the orbit.

use alloc::vec::Vec;

use crate::ntheory::{
    add_mod, check_odd_modulus, check_odd_prime, coprime_residue, legendre_symbol, mod_inverse,
    mul_mod, sqrt_mod_prime, sub_mod, ReduceMod,
};
use crate::{Error, Result};

/// A point of `H_{n,c}` with coordinates in `[0, c)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HyperbolaPoint {
    x: u64,
    y: u64,
    modulus: u64,
}

impl HyperbolaPoint {
    /// Validates `x·y ≡ n (mod c)` and the coordinate range.
    pub fn new(n: impl ReduceMod, x: u64, y: u64, c: u64) -> Result<Self> {
        check_odd_modulus(c)?;
        if x >= c || y >= c || mul_mod(x, y, c) != n.reduce_mod(c) {
            return Err(Error::NotOnHyperbola { x, y, modulus: c });
        }
        Ok(Self { x, y, modulus: c })
    }

    pub(crate) fn new_unchecked(x: u64, y: u64, modulus: u64) -> Self {
        Self { x, y, modulus }
    }

    pub fn x(&self) -> u64 {
        self.x
    }

    pub fn y(&self) -> u64 {
        self.y
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// `|x − y|` as integers.
    pub fn distance(&self) -> u64 {
        self.x.abs_diff(self.y)
    }

    /// `x·y mod c`, the `n` this point certifies.
    pub fn product(&self) -> u64 {
        mul_mod(self.x, self.y, self.modulus)
    }

    /// Membership in `0 ≤ y ≤ min(x, c − x)`.
    pub fn in_fundamental_region(&self) -> bool {
        self.y <= self.x.min(self.modulus - self.x)
    }

    /// Reflection across `y = x`.
    pub fn swap(&self) -> Self {
        Self::new_unchecked(self.y, self.x, self.modulus)
    }

    /// Reflection across `x + y = c`, taken modulo `c`.
    pub fn mirror(&self) -> Self {
        let c = self.modulus;
        Self::new_unchecked((c - self.x) % c, (c - self.y) % c, c)
    }
}

/// The points sharing the distance `u` up to sign modulo `p`.
///
/// Members solve `Y(Y − u) ≡ n` or `Y(Y + u) ≡ n`; each has integer distance
/// `u` or `p − u` (the two quadratics are the same for `u` and `p − u`). The
/// class is a single symmetry orbit, so all members share one integer
/// distance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceClass {
    pub u: u64,
    pub points: Vec<HyperbolaPoint>,
}

impl DistanceClass {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// All points of `H_{n,c}`, sorted by `x`. There are `φ(c)` of them.
pub fn hyperbola_points(n: impl ReduceMod, c: u64) -> Result<Vec<HyperbolaPoint>> {
    check_odd_modulus(c)?;
    let n = coprime_residue(n, c)?;
    Ok((1..c)
        .filter_map(|x| mod_inverse(x, c).ok().map(|inv| (x, inv)))
        .map(|(x, inv)| HyperbolaPoint::new_unchecked(x, mul_mod(n, inv, c), c))
        .collect())
}

/// `D_{n,c} = {|x − y| : (x, y) ∈ H_{n,c}}`, ascending.
pub fn distance_set(n: impl ReduceMod, c: u64) -> Result<Vec<u64>> {
    let mut d: Vec<u64> = hyperbola_points(n, c)?
        .iter()
        .map(HyperbolaPoint::distance)
        .collect();
    d.sort_unstable();
    d.dedup();
    Ok(d)
}

/// Closed form for `|D_{n,p}|` at an odd prime `p ∤ n`:
/// `(p−1)/4 + (1 + (n/p))/2` when `p ≡ 1 (mod 4)`, `(p−3)/4 + 1` otherwise.
pub fn distance_set_size_formula(n: impl ReduceMod, p: u64) -> Result<u64> {
    check_odd_prime(p)?;
    let n = coprime_residue(n, p)?;
    Ok(if p % 4 == 1 {
        let residue = legendre_symbol(n, p)? == 1;
        (p - 1) / 4 + u64::from(residue)
    } else {
        (p - 3) / 4 + 1
    })
}

/// The class of points at distance `±u (mod p)`, from the roots of
/// `Y² ∓ uY − n` whose shared discriminant is `4n + u²`.
pub fn distance_class(n: impl ReduceMod, p: u64, u: u64) -> Result<DistanceClass> {
    check_odd_prime(p)?;
    let n = coprime_residue(n, p)?;
    if u >= p {
        return Err(Error::InvalidArgument(alloc::format!(
            "distance {u} must be below the modulus {p}"
        )));
    }
    let disc = add_mod(mul_mod(4, n, p), mul_mod(u, u, p), p);
    let mut points = Vec::with_capacity(4);
    if let Some(s) = sqrt_mod_prime(disc, p)? {
        let half = p.div_ceil(2);
        for root in [s, (p - s) % p] {
            // Y(Y − u) ≡ n  ⇒  Y = (u ± s)/2, point (Y − u, Y)
            let y = mul_mod(add_mod(u, root, p), half, p);
            points.push(HyperbolaPoint::new_unchecked(sub_mod(y, u, p), y, p));
            // Y(Y + u) ≡ n  ⇒  Y = (−u ± s)/2, point (Y + u, Y)
            let y = mul_mod(sub_mod(root, u, p), half, p);
            points.push(HyperbolaPoint::new_unchecked(add_mod(y, u, p), y, p));
        }
    }
    points.sort_unstable();
    points.dedup();
    Ok(DistanceClass { u, points })
}

/// Points of `H_{n,p}` in the closed region `0 ≤ y ≤ min(x, p − x)`.
pub fn fundamental_region(n: impl ReduceMod, p: u64) -> Result<Vec<HyperbolaPoint>> {
    check_odd_prime(p)?;
    Ok(hyperbola_points(n, p)?
        .into_iter()
        .filter(HyperbolaPoint::in_fundamental_region)
        .collect())
}

/// Closure of `{pt}` under both reflections; one, two or four points.
pub fn symmetry_orbit(pt: &HyperbolaPoint) -> Vec<HyperbolaPoint> {
    let mut orbit = alloc::vec![*pt, pt.swap(), pt.mirror(), pt.swap().mirror()];
    orbit.sort_unstable();
    orbit.dedup();
    orbit
}

/// The orbit member inside the fundamental region.
pub fn canonical_representative(pt: &HyperbolaPoint) -> HyperbolaPoint {
    symmetry_orbit(pt)
        .into_iter()
        .find(HyperbolaPoint::in_fundamental_region)
        .expect("every orbit meets the fundamental region")
}
