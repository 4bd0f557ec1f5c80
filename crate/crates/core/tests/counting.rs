use num_bigint::BigUint;
use proptest::prelude::*;

use quadtarget_core::hyperbola::{distance_set_size_formula, fundamental_region};
use quadtarget_core::ntheory::{odd_primes_up_to, FactoredModulus};
use quadtarget_core::targets::{
    count_solutions_brute, enumerate_targets, gamma1, gamma2, tau, tau_brute, tau_prime,
    tau_prime_power,
};

#[test]
fn closed_form_matches_brute_and_distances() {
    for p in odd_primes_up_to(200) {
        for n in 1..p {
            let t = tau_prime(n, p).unwrap();
            assert_eq!(t, tau_brute(n, p).unwrap(), "n={n} p={p}");
            assert_eq!(t, distance_set_size_formula(n, p).unwrap());
        }
    }
}

#[test]
fn prime_power_recursion_matches_brute() {
    for p in [3u64, 5, 7, 11, 13] {
        let mut k = 1;
        while p.pow(k) <= 30_000 {
            for n in 1..p {
                assert_eq!(
                    tau_prime_power(n, p, k).unwrap(),
                    tau_brute(n, p.pow(k)).unwrap(),
                    "n={n} p={p} k={k}"
                );
            }
            k += 1;
        }
    }
}

#[test]
fn lemma_count_is_p_minus_one() {
    for p in odd_primes_up_to(300) {
        for n in [1, 2, p - 1, p / 2 + 1] {
            if n % p == 0 {
                continue;
            }
            assert_eq!(count_solutions_brute(n, p).unwrap(), p - 1);
        }
    }
}

#[test]
fn targets_account_for_all_solutions() {
    // a ≠ 0 ≠ b gives four (x, y) pairs, a zero component gives two
    for p in odd_primes_up_to(150) {
        for n in 1..p {
            let mut total = 0;
            for t in enumerate_targets(n, p).unwrap() {
                let xs = (0..p).filter(|x| x * x % p == t.a()).count() as u64;
                let ys = (0..p).filter(|y| y * y % p == t.b()).count() as u64;
                let expected = if t.a() == 0 || t.b() == 0 { 2 } else { 4 };
                assert_eq!(xs * ys, expected, "n={n} p={p} t={t:?}");
                total += xs * ys;
            }
            assert_eq!(total, p - 1);
        }
    }
}

#[test]
fn bijection_round_trips() {
    for p in odd_primes_up_to(100) {
        for n in 1..p {
            let region = fundamental_region(n, p).unwrap();
            let targets = enumerate_targets(n, p).unwrap();
            assert_eq!(region.len(), targets.len());
            for pt in &region {
                let t = gamma1(pt, n).unwrap();
                assert!(t.certifies(n));
                assert_eq!(gamma2(&t, n).unwrap(), *pt);
            }
            for t in &targets {
                assert_eq!(gamma1(&gamma2(t, n).unwrap(), n).unwrap(), *t);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn tau_is_multiplicative(s in (1u64..160).prop_map(|v| 2 * v + 1), t in (1u64..160).prop_map(|v| 2 * v + 1), n in 1u64..1_000_000) {
        prop_assume!(num_integer::gcd(s, t) == 1);
        prop_assume!(num_integer::gcd(n, s * t) == 1);
        prop_assert_eq!(tau_brute(n, s * t).unwrap(), tau_brute(n, s).unwrap() * tau_brute(n, t).unwrap());
        let formula = tau(n, &FactoredModulus::from_u64(s * t).unwrap()).unwrap();
        prop_assert_eq!(formula, BigUint::from(tau_brute(n, s * t).unwrap()));
    }
}
