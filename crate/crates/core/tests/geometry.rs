use quadtarget_core::hyperbola::{
    canonical_representative, distance_class, distance_set, distance_set_size_formula,
    fundamental_region, hyperbola_points, symmetry_orbit,
};
use quadtarget_core::ntheory::{legendre_symbol, odd_primes_up_to};

fn phi(c: u64) -> u64 {
    (1..=c).filter(|&x| num_integer::gcd(x, c) == 1).count() as u64
}

#[test]
fn point_count_is_totient() {
    for c in (3..2000u64).step_by(2) {
        for n in [1u64, 2, 4, 97, 1999] {
            if num_integer::gcd(n, c) != 1 {
                continue;
            }
            let pts = hyperbola_points(n, c).unwrap();
            assert_eq!(pts.len() as u64, phi(c), "n={n} c={c}");
            assert!(pts.iter().all(|p| p.x() * p.y() % c == n % c));
        }
    }
}

#[test]
fn region_is_in_bijection_with_distances() {
    for p in odd_primes_up_to(300) {
        for n in 1..p {
            let region = fundamental_region(n, p).unwrap();
            let mut images: Vec<u64> = region.iter().map(|q| q.distance()).collect();
            images.sort_unstable();
            let before = images.len();
            images.dedup();
            assert_eq!(
                images.len(),
                before,
                "distance map not injective, n={n} p={p}"
            );
            assert_eq!(images, distance_set(n, p).unwrap(), "n={n} p={p}");
            assert_eq!(
                region.len() as u64,
                distance_set_size_formula(n, p).unwrap()
            );
        }
    }
}

#[test]
fn class_sizes_follow_discriminant() {
    for p in odd_primes_up_to(120) {
        for n in 1..p {
            for u in 0..p {
                let size = distance_class(n, p, u).unwrap().len();
                let expected = if u == 0 {
                    if legendre_symbol(n, p).unwrap() == 1 {
                        2
                    } else {
                        0
                    }
                } else {
                    match legendre_symbol(4 * n + u * u, p).unwrap() {
                        1 => 4,
                        0 => 2,
                        _ => 0,
                    }
                };
                assert_eq!(size, expected, "n={n} p={p} u={u}");
            }
        }
    }
}

#[test]
fn orbits_stay_on_the_hyperbola() {
    for p in odd_primes_up_to(80) {
        for n in 1..p {
            for pt in hyperbola_points(n, p).unwrap() {
                let orbit = symmetry_orbit(&pt);
                assert!(matches!(orbit.len(), 1 | 2 | 4));
                assert!(orbit.iter().all(|q| q.product() == n));
                let rep = canonical_representative(&pt);
                assert!(rep.in_fundamental_region());
                assert_eq!(canonical_representative(&rep), rep);
                assert!(orbit.contains(&rep));
            }
        }
    }
}
