use num_bigint::BigUint;
use proptest::prelude::*;

use quadtarget_core::ntheory::{is_prime, odd_primorial_split};
use quadtarget_core::targets::enumerate_targets;
use quadtarget_core::{
    factor, naive_fermat, residue_candidates, FactorStatus, FactorizationConfig, PrimorialSplit,
};

fn next_prime(mut p: u64) -> u64 {
    while !is_prime(p) {
        p += 1;
    }
    p
}

/// Consecutive primes `p < q` with `q − p ≤ 2·n^{1/4}`.
fn close_pair(start: u64) -> Option<(u64, u64)> {
    let p = next_prime(start);
    let q = next_prime(p + 1);
    let n = (p as f64) * (q as f64);
    ((q - p) as f64 <= 2.0 * n.powf(0.25)).then_some((p, q))
}

fn split_of(m: usize) -> PrimorialSplit {
    let primes: Vec<u64> = [3u64, 5, 7, 11, 13, 17, 19][..m].to_vec();
    let r = m / 2;
    PrimorialSplit {
        m,
        r,
        c_prime: primes[..r].iter().product(),
        c_main: primes[r..].iter().product(),
        primes,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn balanced_semiprimes_are_found(start in 10_000u64..1_000_000) {
        let Some((p, q)) = close_pair(start) else { return Ok(()); };
        let n = BigUint::from(p) * q;
        let res = factor(&n, &FactorizationConfig::default()).unwrap();
        prop_assert_eq!(res.status, FactorStatus::Found);
        let (a, b) = res.factors.unwrap();
        prop_assert_eq!(&a * &b, n.clone());
        let (x, y) = (res.witness_x.unwrap(), res.witness_y.unwrap());
        prop_assert_eq!(&n + &x * &x, &y * &y);
    }

    #[test]
    fn witness_survives_pruning(start in 10_000u64..1_000_000) {
        let Some((p, q)) = close_pair(start) else { return Ok(()); };
        let n = BigUint::from(p) * q;
        let split = odd_primorial_split(&n, None, false).unwrap();
        let x_star = (q - p) / 2;
        let residues = residue_candidates(&n, &split).unwrap();
        prop_assert!(residues.binary_search(&(x_star % split.modulus())).is_ok());
        let n_main = (p % split.c_main) * (q % split.c_main) % split.c_main;
        let a = x_star * x_star % split.c_main;
        let targets = enumerate_targets(n_main, split.c_main).unwrap();
        prop_assert!(targets.iter().any(|t| t.a() == a));
    }

    #[test]
    fn never_more_candidates_than_naive(start in 10_000u64..1_000_000) {
        let Some((p, q)) = close_pair(start) else { return Ok(()); };
        let n = BigUint::from(p) * q;
        let res = factor(&n, &FactorizationConfig::default()).unwrap();
        let naive = naive_fermat(&n, 10_000_000).unwrap();
        prop_assert_eq!(naive.status, FactorStatus::Found);
        prop_assert!(res.stats.candidates_tested <= naive.stats.candidates_tested);
    }
}

#[test]
fn residue_density_falls_as_primes_are_added() {
    for n in [1_000_036_000_099u64, 999_962_000_357, 10_403, 123_454_321] {
        let big = BigUint::from(n);
        let mut previous = f64::INFINITY;
        for m in 3..=5 {
            let split = split_of(m);
            let residues = residue_candidates(&big, &split).unwrap();
            let density = residues.len() as f64 / split.modulus() as f64;
            assert!(density < previous, "n={n} m={m}: {density} ≥ {previous}");
            previous = density;
        }
    }
}
