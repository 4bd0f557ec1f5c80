//! Reduced-size runs of the oracle checks, for `quadtarget selftest`.

use quadtarget_core::hyperbola::{
    distance_class, distance_set, distance_set_size_formula, fundamental_region,
};
use quadtarget_core::ntheory::{legendre_symbol, odd_primes_up_to};
use quadtarget_core::targets::{
    count_solutions_brute, density_table, enumerate_targets, gamma1, gamma2, tau_brute, tau_prime,
    tau_prime_power,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub cases: u64,
    pub detail: String,
}

type CheckFn = fn() -> Result<u64, String>;

const PRIME_BOUND: u64 = 100;
const POWER_BOUND: u64 = 3000;

pub fn run() -> Vec<CheckOutcome> {
    let checks: [(&'static str, CheckFn); 8] = [
        ("tau-closed-form", tau_closed_form),
        ("distance-count", distance_count),
        ("prime-power-recursion", prime_power_recursion),
        ("multiplicativity", multiplicativity),
        ("solution-count", solution_count),
        ("bijection", bijection),
        ("class-trichotomy", class_trichotomy),
        ("density-decay", density_decay),
    ];
    checks
        .into_iter()
        .map(|(name, f)| match f() {
            Ok(cases) => CheckOutcome {
                name,
                passed: true,
                cases,
                detail: String::new(),
            },
            Err(detail) => CheckOutcome {
                name,
                passed: false,
                cases: 0,
                detail,
            },
        })
        .collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn tau_closed_form() -> Result<u64, String> {
    let mut cases = 0;
    for p in odd_primes_up_to(PRIME_BOUND) {
        for n in 1..p {
            let (f, b) = (tau_prime(n, p).map_err(err)?, tau_brute(n, p).map_err(err)?);
            ensure(f == b, || format!("n={n} p={p}: formula {f} vs count {b}"))?;
            cases += 1;
        }
    }
    Ok(cases)
}

fn distance_count() -> Result<u64, String> {
    let mut cases = 0;
    for p in odd_primes_up_to(PRIME_BOUND) {
        for n in 1..p {
            let size = distance_set(n, p).map_err(err)?.len() as u64;
            let f = distance_set_size_formula(n, p).map_err(err)?;
            ensure(size == f, || {
                format!("n={n} p={p}: |D| {size} vs formula {f}")
            })?;
            cases += 1;
        }
    }
    Ok(cases)
}

fn prime_power_recursion() -> Result<u64, String> {
    let mut cases = 0;
    for p in [3u64, 5, 7, 11, 13] {
        let mut k = 1;
        while p.pow(k) <= POWER_BOUND {
            for n in 1..p {
                let r = tau_prime_power(n, p, k).map_err(err)?;
                let b = tau_brute(n, p.pow(k)).map_err(err)?;
                ensure(r == b, || {
                    format!("n={n} p={p} k={k}: recursion {r} vs count {b}")
                })?;
                cases += 1;
            }
            k += 1;
        }
    }
    Ok(cases)
}

fn multiplicativity() -> Result<u64, String> {
    let mut cases = 0;
    for s in (3..60u64).step_by(2) {
        for t in (s + 2..60u64).step_by(2) {
            if num_integer::gcd(s, t) != 1 {
                continue;
            }
            let n = (s * 31 + t * 17) % 1009 + 1;
            if num_integer::gcd(n, s * t) != 1 {
                continue;
            }
            let st = tau_brute(n, s * t).map_err(err)?;
            let prod = tau_brute(n, s).map_err(err)? * tau_brute(n, t).map_err(err)?;
            ensure(st == prod, || format!("n={n} s={s} t={t}: {st} vs {prod}"))?;
            cases += 1;
        }
    }
    Ok(cases)
}

fn solution_count() -> Result<u64, String> {
    let mut cases = 0;
    for p in odd_primes_up_to(PRIME_BOUND) {
        for n in [1, 2, p - 1, p / 2 + 1, p / 3 + 1] {
            if n % p == 0 {
                continue;
            }
            let c = count_solutions_brute(n, p).map_err(err)?;
            ensure(c == p - 1, || format!("n={n} p={p}: {c} solutions"))?;
            cases += 1;
        }
    }
    Ok(cases)
}

fn bijection() -> Result<u64, String> {
    let mut cases = 0;
    for p in odd_primes_up_to(PRIME_BOUND) {
        for n in 1..p {
            for pt in fundamental_region(n, p).map_err(err)? {
                let back = gamma2(&gamma1(&pt, n).map_err(err)?, n).map_err(err)?;
                ensure(back == pt, || format!("n={n} p={p}: {pt:?} -> {back:?}"))?;
                cases += 1;
            }
            for t in enumerate_targets(n, p).map_err(err)? {
                let back = gamma1(&gamma2(&t, n).map_err(err)?, n).map_err(err)?;
                ensure(back == t, || format!("n={n} p={p}: {t:?} -> {back:?}"))?;
                cases += 1;
            }
        }
    }
    Ok(cases)
}

fn class_trichotomy() -> Result<u64, String> {
    let mut cases = 0;
    for p in odd_primes_up_to(PRIME_BOUND) {
        for n in 1..p {
            for u in 0..p {
                let size = distance_class(n, p, u).map_err(err)?.len();
                let expected = if u == 0 {
                    if legendre_symbol(n, p).map_err(err)? == 1 {
                        2
                    } else {
                        0
                    }
                } else {
                    match legendre_symbol(4 * n + u * u, p).map_err(err)? {
                        1 => 4,
                        0 => 2,
                        _ => 0,
                    }
                };
                ensure(size == expected, || {
                    format!("n={n} p={p} u={u}: |A_u| {size} vs {expected}")
                })?;
                cases += 1;
            }
        }
    }
    Ok(cases)
}

fn density_decay() -> Result<u64, String> {
    let rows = density_table(1u64, 31).map_err(err)?;
    let mut previous: Option<&quadtarget_core::Fraction> = None;
    for row in &rows {
        let normalized = row.normalized.ok_or("invalid row")?;
        ensure(normalized <= 10.0, || {
            format!("B={}: normalized {normalized}", row.bound)
        })?;
        let ratio = row.ratio.as_ref().ok_or("invalid row")?;
        if let Some(prev) = previous {
            let decreasing =
                &ratio.numerator * &prev.denominator < &prev.numerator * &ratio.denominator;
            ensure(decreasing, || {
                format!("B={}: ratio {ratio} not below {prev}", row.bound)
            })?;
        }
        previous = Some(ratio);
    }
    Ok(rows.len() as u64)
}
