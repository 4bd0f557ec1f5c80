//! The `--mod` argument: a plain odd integer or a factorization string such
//! as `3^2*7` (primes ascending, exponents optional).

use std::str::FromStr;

use anyhow::{bail, Context};
use quadtarget_core::FactoredModulus;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModulusSpec {
    Plain(u64),
    Factored(FactoredModulus),
}

impl FromStr for ModulusSpec {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> anyhow::Result<Self> {
        let s = s.trim();
        if !s.contains(['*', '^']) {
            let c: u64 = s
                .parse()
                .with_context(|| format!("invalid modulus `{s}`"))?;
            if c < 3 || c.is_multiple_of(2) {
                bail!("even modulus {c} is not supported (odd modulus ≥ 3 required)");
            }
            return Ok(Self::Plain(c));
        }
        let mut factors = Vec::new();
        for term in s.split('*') {
            let term = term.trim();
            let (p, k) = match term.split_once('^') {
                Some((p, k)) => (p.trim(), k.trim()),
                None => (term, "1"),
            };
            let p: u64 = p
                .parse()
                .with_context(|| format!("invalid prime `{p}` in `{s}`"))?;
            let k: u32 = k
                .parse()
                .with_context(|| format!("invalid exponent `{k}` in `{s}`"))?;
            factors.push((p, k));
        }
        Ok(Self::Factored(FactoredModulus::new(factors)?))
    }
}

impl ModulusSpec {
    /// The factored form, factoring a plain modulus by trial division.
    pub fn factored(&self) -> anyhow::Result<FactoredModulus> {
        match self {
            Self::Plain(c) => Ok(FactoredModulus::from_u64(*c)?),
            Self::Factored(f) => Ok(f.clone()),
        }
    }

    pub fn value_u64(&self) -> Option<u64> {
        match self {
            Self::Plain(c) => Some(*c),
            Self::Factored(f) => f.value_u64(),
        }
    }
}
