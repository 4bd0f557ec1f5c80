//! Modular hyperbolas, quadratic-residue targets and target-guided Fermat
//! factorization.
//!
//! For an integer `n` and an odd modulus `c`, a *target* is a pair of squares
//! `(a, b)` modulo `c` (zero included) with `n + a ≡ b (mod c)`. Every integer
//! solution of `n + x² = y²` reduces to a target, so the targets modulo a
//! product of small primes prune the Fermat search for `x`.
//!
//! The crate is `no_std` and only needs `alloc`. IO, the command-line front
//! end and output formats live in the `quadtarget` crate.
//!
//! Module map:
//!
//! * [`ntheory`]: symbols, modular square roots, CRT, integer square roots,
//!   primes and primorial splits.
//! * [`hyperbola`]: points of `xy ≡ n (mod c)`, distance sets, distance
//!   classes and the fundamental region.
//! * [`targets`]: target enumeration, the counting function `τ(n, c)`,
//!   prime-power lifting, the bijection with the fundamental region and the
//!   primorial density table.
//! * [`factorizer`]: the target-guided search and a plain Fermat baseline.

#![no_std]

extern crate alloc;

mod error;
pub mod factorizer;
pub mod hyperbola;
pub mod ntheory;
pub mod targets;

pub use error::{Error, Result};
pub use factorizer::{
    factor, fermat_check, naive_fermat, residue_candidates, CandidateStats, FactorResult,
    FactorStatus, FactorizationConfig, Prepared, SearchPlan, WindowHit, WindowScan,
};
pub use hyperbola::{DistanceClass, HyperbolaPoint};
pub use ntheory::{FactoredModulus, PrimorialSplit, ReduceMod};
pub use targets::{DensityRow, Fraction, Target};
