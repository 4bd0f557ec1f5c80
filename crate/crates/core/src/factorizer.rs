//! Target-guided Fermat factorization.
//!
//! A Fermat witness `n + x² = y²` reduces modulo every odd prime to a target,
//! so `x mod M` (with `M = c′·c` a product of small odd primes) lies in the
//! CRT combination of the square roots of the targets' `a` components. The
//! search walks `x = ρ + M·k` over those residues `ρ` for `k = 0, 1, …,
//! ⌈√n/M⌉` and tests `n + x²` for squareness.

use alloc::vec::Vec;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::ntheory::{
    crt_product, is_perfect_square, isqrt, odd_primorial_split, sqrt_mod_composite,
    FactoredModulus, PrimorialSplit, ReduceMod,
};
use crate::targets::enumerate_targets_factored;
use crate::{Error, Result};

/// Knobs for [`factor`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationConfig {
    /// Split index `r`; `⌊m/2⌋` when absent.
    pub r_override: Option<usize>,
    /// Overrides the window bound `⌈√n/(c·c′)⌉`.
    pub k_window: Option<u64>,
    /// Accumulate `∏(⌊√(n + x²)⌋ − x) mod n` and take one gcd per batch.
    pub batch_gcd: bool,
    pub batch_size: usize,
    /// Hard cap on the number of candidates examined.
    pub candidate_limit: u64,
    /// Accept a split with only two primes (`m = 2`).
    pub relaxed_split: bool,
}

impl Default for FactorizationConfig {
    fn default() -> Self {
        Self {
            r_override: None,
            k_window: None,
            batch_gcd: false,
            batch_size: 64,
            candidate_limit: u64::MAX,
            relaxed_split: false,
        }
    }
}

impl FactorizationConfig {
    fn validate(&self) -> Result<()> {
        if self.k_window == Some(0) {
            return Err(Error::InvalidArgument("k window must be at least 1".into()));
        }
        if self.candidate_limit == 0 {
            return Err(Error::InvalidArgument(
                "candidate limit must be at least 1".into(),
            ));
        }
        if self.batch_size == 0 {
            return Err(Error::InvalidArgument(
                "batch size must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorStatus {
    Found,
    Exhausted,
    Aborted,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CandidateStats {
    /// `τ(n, c)`
    pub targets_main: u64,
    /// `τ(n, c′)`
    pub targets_prime: u64,
    /// Size of the combined residue set modulo `M`.
    pub roots_total: u64,
    pub candidates_tested: u64,
    pub naive_fermat_steps: Option<u64>,
    pub k_window: u64,
    /// `M = c·c′`; zero when no search ran.
    pub search_modulus: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorResult {
    pub status: FactorStatus,
    /// `(g, n/g)` with `1 < g < n`.
    pub factors: Option<(BigUint, BigUint)>,
    pub witness_x: Option<BigUint>,
    pub witness_y: Option<BigUint>,
    pub stats: CandidateStats,
}

impl FactorResult {
    fn found(
        n: &BigUint,
        g: BigUint,
        witness: Option<(BigUint, BigUint)>,
        stats: CandidateStats,
    ) -> Self {
        let cofactor = n / &g;
        let (witness_x, witness_y) = witness.unzip();
        Self {
            status: FactorStatus::Found,
            factors: Some((g, cofactor)),
            witness_x,
            witness_y,
            stats,
        }
    }

    fn empty(status: FactorStatus, stats: CandidateStats) -> Self {
        Self {
            status,
            factors: None,
            witness_x: None,
            witness_y: None,
            stats,
        }
    }
}

/// If `n + x²` is a perfect square `y²`, returns `(y, gcd(y − x, n))`.
pub fn fermat_check(n: &BigUint, x: &BigUint) -> Option<(BigUint, BigUint)> {
    let y = is_perfect_square(&(n + x * x))?;
    let g = (&y - x).gcd(n);
    Some((y, g))
}

/// A witness that actually splits `n`: tries `gcd(y − x, n)`, then
/// `gcd(y + x, n)`.
fn splitting_witness(n: &BigUint, x: &BigUint) -> Option<(BigUint, BigUint)> {
    let (y, g) = fermat_check(n, x)?;
    if is_proper_divisor(&g, n) {
        return Some((y, g));
    }
    let g = (&y + x).gcd(n);
    is_proper_divisor(&g, n).then_some((y, g))
}

fn is_proper_divisor(g: &BigUint, n: &BigUint) -> bool {
    !g.is_one() && g != n && !g.is_zero()
}

/// Square roots of the `a` components of all targets modulo `c`.
fn target_roots(n: &BigUint, primes: &[u64]) -> Result<(u64, Vec<u64>)> {
    let modulus = FactoredModulus::squarefree(primes)?;
    let targets = enumerate_targets_factored(n, &modulus)?;
    let mut roots = Vec::new();
    for t in &targets {
        roots.extend(sqrt_mod_composite(t.a(), &modulus)?);
    }
    roots.sort_unstable();
    roots.dedup();
    Ok((targets.len() as u64, roots))
}

/// The residues `ρ mod c·c′` that `x` can take in any solution of
/// `n + x² = y²`, sorted.
///
/// Fails with [`Error::SharedFactor`] when a prime of the split divides `n`.
pub fn residue_candidates(n: &BigUint, split: &PrimorialSplit) -> Result<Vec<u64>> {
    Ok(residue_candidates_with_counts(n, split)?.2)
}

fn residue_candidates_with_counts(
    n: &BigUint,
    split: &PrimorialSplit,
) -> Result<(u64, u64, Vec<u64>)> {
    if let Some(&prime) = split.primes.iter().find(|&&p| n.reduce_mod(p) == 0) {
        return Err(Error::SharedFactor { prime });
    }
    let (targets_main, main_roots) = target_roots(n, split.main_primes())?;
    let (targets_prime, prime_roots) = target_roots(n, split.prime_primes())?;
    let mut residues = crt_product(&main_roots, split.c_main, &prime_roots, split.c_prime)?;
    residues.sort_unstable();
    Ok((targets_main, targets_prime, residues))
}

/// Smallest `K` with `K·M ≥ √n`.
fn default_k_window(n: &BigUint, modulus: u64) -> u64 {
    let root = isqrt(n);
    let mut k = root.div_ceil(&BigUint::from(modulus));
    let reach = &k * modulus;
    if &reach * &reach < *n {
        k += 1u32;
    }
    k.to_u64().unwrap_or(u64::MAX).max(1)
}

/// A candidate in window `k` at position `index` of the residue list that
/// produced the factor `factor`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowHit {
    pub k: u64,
    pub index: usize,
    pub factor: BigUint,
    /// `(x, y)` with `n + x² = y²`; absent when a batch gcd split `n`
    /// without any candidate of the batch being a perfect-square witness.
    pub witness: Option<(BigUint, BigUint)>,
}

/// Outcome of scanning one window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowScan {
    pub hit: Option<WindowHit>,
    pub tested: u64,
    pub budget_exhausted: bool,
}

/// Precomputed state of the search: split, residues and window bound.
///
/// Windows are independent; [`SearchPlan::scan_window`] takes `&self` so
/// callers may scan windows from several threads.
#[derive(Debug, Clone)]
pub struct SearchPlan {
    n: BigUint,
    split: PrimorialSplit,
    residues: Vec<u64>,
    k_window: u64,
    batch: Option<usize>,
    candidate_limit: u64,
    targets_main: u64,
    targets_prime: u64,
}

/// Result of [`SearchPlan::prepare`]: either a plan to run, or a result that
/// needed no search (perfect square, or a split prime dividing `n`).
#[derive(Debug, Clone)]
pub enum Prepared {
    Search(SearchPlan),
    Resolved(FactorResult),
}

impl SearchPlan {
    pub fn prepare(n: &BigUint, cfg: &FactorizationConfig) -> Result<Prepared> {
        cfg.validate()?;
        if n.is_even() {
            return Err(Error::EvenInput);
        }
        if *n < BigUint::from(9u32) {
            return Err(Error::InvalidArgument("n must be at least 9".into()));
        }
        if let Some(r) = is_perfect_square(n) {
            let witness = (BigUint::zero(), r.clone());
            return Ok(Prepared::Resolved(FactorResult::found(
                n,
                r,
                Some(witness),
                CandidateStats::default(),
            )));
        }
        let split = odd_primorial_split(n, cfg.r_override, cfg.relaxed_split)?;
        let (targets_main, targets_prime, residues) =
            match residue_candidates_with_counts(n, &split) {
                Ok(found) => found,
                Err(Error::SharedFactor { prime }) => {
                    let stats = CandidateStats {
                        search_modulus: split.modulus(),
                        ..CandidateStats::default()
                    };
                    return Ok(Prepared::Resolved(FactorResult::found(
                        n,
                        BigUint::from(prime),
                        None,
                        stats,
                    )));
                }
                Err(e) => return Err(e),
            };
        let k_window = cfg
            .k_window
            .unwrap_or_else(|| default_k_window(n, split.modulus()));
        Ok(Prepared::Search(SearchPlan {
            n: n.clone(),
            split,
            residues,
            k_window,
            batch: cfg.batch_gcd.then_some(cfg.batch_size),
            candidate_limit: cfg.candidate_limit,
            targets_main,
            targets_prime,
        }))
    }

    pub fn n(&self) -> &BigUint {
        &self.n
    }

    pub fn split(&self) -> &PrimorialSplit {
        &self.split
    }

    pub fn residues(&self) -> &[u64] {
        &self.residues
    }

    /// Windows run over `k = 0..=k_window`.
    pub fn k_window(&self) -> u64 {
        self.k_window
    }

    pub fn candidate_limit(&self) -> u64 {
        self.candidate_limit
    }

    fn candidate(&self, k: u64, rho: u64) -> BigUint {
        BigUint::from(k) * self.split.modulus() + rho
    }

    /// Scans `x = ρ + M·k` over the residues in ascending order, examining at
    /// most `budget` candidates.
    pub fn scan_window(&self, k: u64, budget: u64) -> WindowScan {
        let len = self.residues.len();
        let limit = usize::try_from(budget).unwrap_or(usize::MAX).min(len);
        let mut scan = match self.batch {
            None => self.scan_single(k, limit),
            Some(size) => self.scan_batched(k, limit, size),
        };
        scan.budget_exhausted = scan.hit.is_none() && limit < len;
        scan
    }

    fn scan_single(&self, k: u64, limit: usize) -> WindowScan {
        for (index, &rho) in self.residues[..limit].iter().enumerate() {
            let x = self.candidate(k, rho);
            if let Some((y, g)) = splitting_witness(&self.n, &x) {
                return WindowScan {
                    hit: Some(WindowHit {
                        k,
                        index,
                        factor: g,
                        witness: Some((x, y)),
                    }),
                    tested: index as u64 + 1,
                    budget_exhausted: false,
                };
            }
        }
        WindowScan {
            hit: None,
            tested: limit as u64,
            budget_exhausted: false,
        }
    }

    fn scan_batched(&self, k: u64, limit: usize, size: usize) -> WindowScan {
        let n = &self.n;
        let mut start = 0;
        while start < limit {
            let end = (start + size).min(limit);
            let mut product = BigUint::one();
            for &rho in &self.residues[start..end] {
                let x = self.candidate(k, rho);
                let root = isqrt(&(n + &x * &x));
                product = product * ((root - &x) % n) % n;
            }
            let g = product.gcd(n);
            if !g.is_one() {
                // locate a perfect-square witness inside the batch
                for (offset, &rho) in self.residues[start..end].iter().enumerate() {
                    let x = self.candidate(k, rho);
                    if let Some((y, g)) = splitting_witness(n, &x) {
                        return WindowScan {
                            hit: Some(WindowHit {
                                k,
                                index: start + offset,
                                factor: g,
                                witness: Some((x, y)),
                            }),
                            tested: end as u64,
                            budget_exhausted: false,
                        };
                    }
                }
                if is_proper_divisor(&g, n) {
                    return WindowScan {
                        hit: Some(WindowHit {
                            k,
                            index: end - 1,
                            factor: g,
                            witness: None,
                        }),
                        tested: end as u64,
                        budget_exhausted: false,
                    };
                }
            }
            start = end;
        }
        WindowScan {
            hit: None,
            tested: limit as u64,
            budget_exhausted: false,
        }
    }

    pub fn stats(&self, candidates_tested: u64) -> CandidateStats {
        CandidateStats {
            targets_main: self.targets_main,
            targets_prime: self.targets_prime,
            roots_total: self.residues.len() as u64,
            candidates_tested,
            naive_fermat_steps: None,
            k_window: self.k_window,
            search_modulus: self.split.modulus(),
        }
    }

    /// Result for a hit found after `tested` candidates in total.
    pub fn found(&self, hit: WindowHit, tested: u64) -> FactorResult {
        FactorResult::found(&self.n, hit.factor, hit.witness, self.stats(tested))
    }

    pub fn not_found(&self, status: FactorStatus, tested: u64) -> FactorResult {
        FactorResult::empty(status, self.stats(tested))
    }

    /// Runs the windows in order on the current thread.
    pub fn run(&self) -> FactorResult {
        let mut tested = 0u64;
        for k in 0..=self.k_window {
            let budget = self.candidate_limit - tested;
            let scan = self.scan_window(k, budget);
            tested += scan.tested;
            if let Some(hit) = scan.hit {
                return self.found(hit, tested);
            }
            if scan.budget_exhausted || (tested == self.candidate_limit && k < self.k_window) {
                return self.not_found(FactorStatus::Aborted, tested);
            }
        }
        self.not_found(FactorStatus::Exhausted, tested)
    }
}

/// Target-guided Fermat factorization of an odd `n ≥ 9`.
pub fn factor(n: &BigUint, cfg: &FactorizationConfig) -> Result<FactorResult> {
    Ok(match SearchPlan::prepare(n, cfg)? {
        Prepared::Resolved(result) => result,
        Prepared::Search(plan) => plan.run(),
    })
}

/// Plain Fermat: tests `x = 0, 1, 2, …` until `n + x²` is a square that splits
/// `n`, at most `step_limit` values.
pub fn naive_fermat(n: &BigUint, step_limit: u64) -> Result<FactorResult> {
    if n.is_even() {
        return Err(Error::EvenInput);
    }
    if *n < BigUint::from(9u32) {
        return Err(Error::InvalidArgument("n must be at least 9".into()));
    }
    // beyond (n − 1)/2 only the trivial witness y − x = 1 remains
    let last = (n - 1u32) >> 1u32;
    let mut x = BigUint::zero();
    let mut steps = 0u64;
    let stats = |steps| CandidateStats {
        candidates_tested: steps,
        naive_fermat_steps: Some(steps),
        ..CandidateStats::default()
    };
    while steps < step_limit {
        if x > last {
            return Ok(FactorResult::empty(FactorStatus::Exhausted, stats(steps)));
        }
        steps += 1;
        if let Some((y, g)) = splitting_witness(n, &x) {
            return Ok(FactorResult::found(n, g, Some((x, y)), stats(steps)));
        }
        x += 1u32;
    }
    Ok(FactorResult::empty(FactorStatus::Aborted, stats(steps)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn relaxed() -> FactorizationConfig {
        FactorizationConfig {
            relaxed_split: true,
            ..FactorizationConfig::default()
        }
    }

    fn factor_set(r: &FactorResult) -> [BigUint; 2] {
        let (a, b) = r.factors.clone().unwrap();
        if a <= b {
            [a, b]
        } else {
            [b, a]
        }
    }

    #[test]
    fn fermat_check_examples() {
        assert_eq!(fermat_check(&big(8051), &big(7)), Some((big(90), big(83))));
        assert_eq!(fermat_check(&big(8051), &big(6)), None);
        assert_eq!(fermat_check(&big(49), &big(0)), Some((big(7), big(7))));
    }

    #[test]
    fn residue_example_8051() {
        let split = odd_primorial_split(&big(8051), Some(1), true).unwrap();
        assert_eq!((split.c_prime, split.c_main), (3, 5));
        let residues = residue_candidates(&big(8051), &split).unwrap();
        assert_eq!(residues, [2, 5, 7, 8, 10, 13]);
        assert!(residues.contains(&7));
    }

    #[test]
    fn residues_match_brute_force() {
        // x mod M is admissible iff n + x² is a square modulo every prime of M
        for n in [
            11_026u64,
            123_457,
            1_000_001,
            999_999_999_989,
            10_403 * 10_007,
        ] {
            let n_big = big(n);
            let Ok(split) = odd_primorial_split(&n_big, None, true) else {
                continue;
            };
            let residues = match residue_candidates(&n_big, &split) {
                Ok(r) => r,
                Err(Error::SharedFactor { prime }) => {
                    assert_eq!(n % prime, 0);
                    continue;
                }
                Err(e) => panic!("{e}"),
            };
            let m = split.modulus();
            let expected: Vec<u64> = (0..m)
                .filter(|&x| {
                    split.primes.iter().all(|&p| {
                        let v = (n % p + x % p * (x % p)) % p;
                        (0..p).any(|y| y * y % p == v)
                    })
                })
                .collect();
            assert_eq!(residues, expected, "n={n}");
        }
    }

    #[test]
    fn shared_factor_is_reported() {
        let n = big(3 * 1_000_003);
        let split = odd_primorial_split(&n, None, false).unwrap();
        assert_eq!(
            residue_candidates(&n, &split),
            Err(Error::SharedFactor { prime: 3 })
        );
        let r = factor(&n, &FactorizationConfig::default()).unwrap();
        assert_eq!(r.status, FactorStatus::Found);
        assert_eq!(r.factors, Some((big(3), big(1_000_003))));
    }

    #[test]
    fn factor_examples() {
        let r = factor(&big(8051), &relaxed()).unwrap();
        assert_eq!(factor_set(&r), [big(83), big(97)]);
        assert_eq!(r.witness_x, Some(big(7)));
        assert_eq!(r.witness_y, Some(big(90)));

        let r = factor(&big(10_403), &relaxed()).unwrap();
        assert_eq!(factor_set(&r), [big(101), big(103)]);
        assert_eq!(r.witness_x, Some(big(1)));

        let n = big(1_000_003) * big(1_000_033);
        let r = factor(&n, &FactorizationConfig::default()).unwrap();
        assert_eq!(factor_set(&r), [big(1_000_003), big(1_000_033)]);
        assert_eq!(r.witness_x, Some(big(15)));
        assert_eq!(r.witness_y, Some(big(1_000_018)));
        let naive = naive_fermat(&n, 1_000).unwrap();
        assert!(r.stats.candidates_tested < naive.stats.candidates_tested);
    }

    #[test]
    fn batched_gcd_agrees() {
        let cfg = FactorizationConfig {
            batch_gcd: true,
            batch_size: 4,
            ..relaxed()
        };
        let r = factor(&big(8051), &cfg).unwrap();
        assert_eq!(factor_set(&r), [big(83), big(97)]);
        let n = big(1_000_003) * big(1_000_033);
        let cfg = FactorizationConfig {
            batch_gcd: true,
            ..FactorizationConfig::default()
        };
        let r = factor(&n, &cfg).unwrap();
        assert_eq!(factor_set(&r), [big(1_000_003), big(1_000_033)]);
    }

    #[test]
    fn prime_is_exhausted() {
        let r = factor(&big(8053), &relaxed()).unwrap();
        assert_eq!(r.status, FactorStatus::Exhausted);
        assert!(r.factors.is_none());
        let s = &r.stats;
        assert_eq!(s.candidates_tested, s.roots_total * (s.k_window + 1));
        assert!(s.candidates_tested <= s.roots_total * (2 * s.k_window + 1));
    }

    #[test]
    fn candidate_limit_aborts() {
        let cfg = FactorizationConfig {
            candidate_limit: 3,
            ..relaxed()
        };
        let r = factor(&big(8053), &cfg).unwrap();
        assert_eq!(r.status, FactorStatus::Aborted);
        assert_eq!(r.stats.candidates_tested, 3);
    }

    #[test]
    fn perfect_square_shortcut() {
        let r = factor(&big(1_000_003 * 1_000_003), &FactorizationConfig::default()).unwrap();
        assert_eq!(r.factors, Some((big(1_000_003), big(1_000_003))));
        assert_eq!(r.witness_x, Some(big(0)));
    }

    #[test]
    fn input_errors() {
        assert_eq!(factor(&big(8050), &relaxed()), Err(Error::EvenInput));
        assert!(matches!(
            factor(&big(8051), &FactorizationConfig::default()),
            Err(Error::Unsupported(_))
        ));
        let cfg = FactorizationConfig {
            k_window: Some(0),
            ..relaxed()
        };
        assert!(factor(&big(8051), &cfg).is_err());
        assert_eq!(naive_fermat(&big(20), 10), Err(Error::EvenInput));
    }

    #[test]
    fn naive_examples() {
        let r = naive_fermat(&big(8051), 100).unwrap();
        assert_eq!(factor_set(&r), [big(83), big(97)]);
        assert_eq!(r.stats.naive_fermat_steps, Some(8));
        let r = naive_fermat(&big(10_403), 100).unwrap();
        assert_eq!(r.witness_x, Some(big(1)));
        assert_eq!(r.stats.naive_fermat_steps, Some(2));
        let r = naive_fermat(&big(15), 100).unwrap();
        assert_eq!(factor_set(&r), [big(3), big(5)]);
        assert_eq!(r.witness_y, Some(big(4)));
        assert_eq!(
            naive_fermat(&big(8053), 10).unwrap().status,
            FactorStatus::Aborted
        );
        assert_eq!(
            naive_fermat(&big(13), 100).unwrap().status,
            FactorStatus::Exhausted
        );
    }
}
