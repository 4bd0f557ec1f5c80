//! Multi-threaded window scan for [`SearchPlan`].
//!
//! Workers claim window indices from a shared counter. A worker that finds a
//! factor lowers the shared bound so no one starts a later window; windows
//! below the bound still finish, so the reported hit is always the one with
//! the smallest `(k, ρ)`, exactly as in the sequential scan.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;
use std::thread;

use quadtarget_core::{FactorResult, FactorStatus, SearchPlan, WindowHit};

pub fn run_parallel(plan: &SearchPlan, threads: usize) -> FactorResult {
    if threads <= 1 {
        return plan.run();
    }
    let per_window = plan.residues().len() as u64;
    let limit = plan.candidate_limit();
    let next = AtomicU64::new(0);
    // smallest window that produced a hit or ran out of budget
    let stop_at = AtomicU64::new(u64::MAX);
    let abort_at = AtomicU64::new(u64::MAX);
    let hits: Mutex<Vec<(WindowHit, u64)>> = Mutex::new(Vec::new());

    thread::scope(|s| {
        for _ in 0..threads {
            s.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::Relaxed);
                if k > plan.k_window() || k >= stop_at.load(Ordering::Acquire) {
                    break;
                }
                let before = k.saturating_mul(per_window);
                if before >= limit {
                    abort_at.fetch_min(k, Ordering::AcqRel);
                    stop_at.fetch_min(k, Ordering::AcqRel);
                    break;
                }
                let scan = plan.scan_window(k, limit - before);
                if let Some(hit) = scan.hit {
                    stop_at.fetch_min(k, Ordering::AcqRel);
                    hits.lock()
                        .expect("hit list poisoned")
                        .push((hit, before + scan.tested));
                } else if scan.budget_exhausted {
                    abort_at.fetch_min(k, Ordering::AcqRel);
                    stop_at.fetch_min(k, Ordering::AcqRel);
                }
            });
        }
    });

    let abort_at = abort_at.into_inner();
    let best = hits
        .into_inner()
        .expect("hit list poisoned")
        .into_iter()
        .filter(|(hit, _)| hit.k < abort_at)
        .min_by_key(|(hit, _)| (hit.k, hit.index));
    match best {
        Some((hit, tested)) => plan.found(hit, tested),
        None if abort_at != u64::MAX => plan.not_found(FactorStatus::Aborted, limit),
        None => plan.not_found(
            FactorStatus::Exhausted,
            per_window.saturating_mul(plan.k_window() + 1),
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;
    use quadtarget_core::{FactorizationConfig, Prepared};

    fn plan(n: u64, cfg: FactorizationConfig) -> SearchPlan {
        match SearchPlan::prepare(&BigUint::from(n), &cfg).unwrap() {
            Prepared::Search(p) => p,
            Prepared::Resolved(r) => panic!("unexpected early result {r:?}"),
        }
    }

    #[test]
    fn matches_sequential() {
        let cfg = FactorizationConfig {
            relaxed_split: true,
            ..Default::default()
        };
        for n in [
            8051u64,
            10_403,
            8053,
            1_000_003 * 1_000_033,
            100_003 * 100_109,
        ] {
            let p = plan(n, cfg.clone());
            let seq = p.run();
            for threads in [2, 3, 8] {
                assert_eq!(run_parallel(&p, threads), seq, "n={n} threads={threads}");
            }
        }
    }

    #[test]
    fn windows_beyond_zero_agree() {
        // a tiny forced window spreads the witness over many k
        let cfg = FactorizationConfig {
            relaxed_split: true,
            k_window: Some(400),
            ..Default::default()
        };
        let n = 1_000_003u64 * 1_002_017;
        let p = plan(n, cfg);
        let seq = p.run();
        assert_eq!(seq.status, FactorStatus::Found);
        assert_eq!(run_parallel(&p, 4), seq);
    }

    #[test]
    fn aborts_like_sequential() {
        let cfg = FactorizationConfig {
            relaxed_split: true,
            candidate_limit: 20,
            ..Default::default()
        };
        let p = plan(8053, cfg);
        assert_eq!(run_parallel(&p, 4), p.run());
    }
}
