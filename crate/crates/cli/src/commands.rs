//! One function per subcommand. Each returns the records to print; `main`
//! handles IO and exit codes.

use std::io::Write;
use std::time::Instant;

use anyhow::{bail, Context};
use num_bigint::{BigInt, BigUint};
use num_traits::Signed;
use serde_json::{json, Map, Value};

use quadtarget_core::hyperbola::{
    distance_set, distance_set_size_formula, fundamental_region, hyperbola_points,
};
use quadtarget_core::ntheory::{odd_primorial_split, ReduceMod};
use quadtarget_core::targets::{
    density_table, enumerate_targets, gamma1, tau, tau_brute, DIRECT_ENUMERATION_LIMIT,
};
use quadtarget_core::{
    naive_fermat, CandidateStats, DensityRow, Error, FactorResult, FactorStatus,
    FactorizationConfig, Prepared, SearchPlan,
};

use crate::modspec::ModulusSpec;
use crate::parallel::run_parallel;
use crate::record::{inputs, int, ints, OutputRecord};

/// Exit code when a factoring run ends without a factor.
pub const EXIT_NOT_FOUND: i32 = 2;

fn gcd_with(n: &BigInt, c: u64) -> u64 {
    num_integer::gcd(n.reduce_mod(c), c)
}

pub fn tau_cmd(n: &BigInt, spec: &ModulusSpec, check: bool) -> anyhow::Result<OutputRecord> {
    let start = Instant::now();
    let factored = spec.factored()?;
    let value = factored.value().clone();
    let brute_feasible = spec
        .value_u64()
        .is_some_and(|c| c <= DIRECT_ENUMERATION_LIMIT);
    let coprime = factored
        .factors()
        .iter()
        .all(|&(p, _)| n.reduce_mod(p) != 0);

    let (mode, brute, formula) = match spec {
        ModulusSpec::Plain(c) if brute_feasible => {
            let brute = tau_brute(n, *c)?;
            let formula = if coprime {
                Some(tau(n, &factored)?)
            } else {
                None
            };
            ("brute", Some(BigUint::from(brute)), formula)
        }
        _ => {
            if !coprime {
                let c = factored
                    .factors()
                    .iter()
                    .find(|&&(p, _)| n.reduce_mod(p) == 0)
                    .map(|&(p, _)| p)
                    .unwrap_or_default();
                bail!(
                    "n shares the prime {c} with the modulus; the closed form needs gcd(n, c) = 1"
                );
            }
            let formula = tau(n, &factored)?;
            let brute = if brute_feasible {
                Some(BigUint::from(tau_brute(
                    n,
                    spec.value_u64().unwrap_or_default(),
                )?))
            } else {
                None
            };
            ("formula", brute, Some(formula))
        }
    };
    let value_tau = if mode == "brute" {
        brute.clone()
    } else {
        formula.clone()
    }
    .context("no τ value computed")?;
    let mut payload = Map::new();
    payload.insert("tau".into(), int(&value_tau));
    payload.insert("mode".into(), Value::from(mode));
    payload.insert("modulus".into(), int(&value));
    payload.insert("factorization".into(), Value::from(factored.to_string()));
    if let (Some(b), Some(f)) = (&brute, &formula) {
        payload.insert("brute".into(), int(b));
        payload.insert("formula".into(), int(f));
        payload.insert("agreement".into(), Value::Bool(b == f));
        if check && b != f {
            bail!("closed form {f} disagrees with direct count {b} for n = {n}, c = {value}");
        }
    }
    let spec_str = match spec {
        ModulusSpec::Plain(c) => c.to_string(),
        ModulusSpec::Factored(f) => f.to_string(),
    };
    Ok(OutputRecord::new(
        "tau",
        inputs([
            ("n", int(n)),
            ("mod", Value::from(spec_str)),
            ("check", Value::Bool(check)),
        ]),
        Value::Object(payload),
    )
    .with_timing(start.elapsed()))
}

pub fn targets_cmd(n: &BigInt, c: u64, limit: Option<usize>) -> anyhow::Result<OutputRecord> {
    let start = Instant::now();
    let all = enumerate_targets(n, c)?;
    let shown = limit.unwrap_or(all.len()).min(all.len());
    let list: Vec<Value> = all[..shown]
        .iter()
        .map(|t| json!({"a": int(t.a()), "b": int(t.b())}))
        .collect();
    let mut echo = inputs([("n", int(n)), ("mod", int(c))]);
    if let Some(l) = limit {
        echo.insert("limit".into(), int(l));
    }
    Ok(OutputRecord::new(
        "targets",
        echo,
        json!({
            "modulus": int(c),
            "count": int(all.len()),
            "targets": list,
            "truncated": shown < all.len(),
        }),
    )
    .with_timing(start.elapsed()))
}

pub fn hyperbola_cmd(n: &BigInt, c: u64) -> anyhow::Result<OutputRecord> {
    let start = Instant::now();
    let points = hyperbola_points(n, c)?;
    let list: Vec<Value> = points
        .iter()
        .map(|p| json!({"x": int(p.x()), "y": int(p.y()), "distance": int(p.distance())}))
        .collect();
    Ok(OutputRecord::new(
        "hyperbola",
        inputs([("n", int(n)), ("mod", int(c))]),
        json!({"modulus": int(c), "count": int(points.len()), "points": list}),
    )
    .with_timing(start.elapsed()))
}

pub fn distances_cmd(n: &BigInt, p: u64) -> anyhow::Result<OutputRecord> {
    let start = Instant::now();
    if gcd_with(n, p) != 1 {
        bail!(Error::NotCoprime {
            gcd: gcd_with(n, p),
            modulus: p
        });
    }
    let formula = distance_set_size_formula(n, p)?;
    let distances = distance_set(n, p)?;
    let region: Vec<Value> = fundamental_region(n, p)?
        .iter()
        .map(|pt| {
            let t = gamma1(pt, n)?;
            Ok(json!({
                "x": int(pt.x()),
                "y": int(pt.y()),
                "distance": int(pt.distance()),
                "target": {"a": int(t.a()), "b": int(t.b())},
            }))
        })
        .collect::<anyhow::Result<_>>()?;
    Ok(OutputRecord::new(
        "distances",
        inputs([("n", int(n)), ("p", int(p))]),
        json!({
            "distances": ints(&distances),
            "size": int(distances.len()),
            "formula": int(formula),
            "region": region,
        }),
    )
    .with_timing(start.elapsed()))
}

/// Flags of the `factor` subcommand.
#[derive(Debug, Clone)]
pub struct FactorOptions {
    pub config: FactorizationConfig,
    pub threads: usize,
    pub baseline: bool,
    pub baseline_limit: u64,
}

impl Default for FactorOptions {
    fn default() -> Self {
        Self {
            config: FactorizationConfig::default(),
            threads: 1,
            baseline: false,
            baseline_limit: 10_000_000,
        }
    }
}

fn status_name(s: FactorStatus) -> &'static str {
    match s {
        FactorStatus::Found => "found",
        FactorStatus::Exhausted => "exhausted",
        FactorStatus::Aborted => "aborted",
    }
}

fn stats_json(s: &CandidateStats) -> Value {
    json!({
        "targetsMain": int(s.targets_main),
        "targetsPrime": int(s.targets_prime),
        "rootsTotal": int(s.roots_total),
        "candidatesTested": int(s.candidates_tested),
        "naiveFermatSteps": s.naive_fermat_steps.map(int),
        "kWindow": int(s.k_window),
        "searchModulus": int(s.search_modulus),
    })
}

fn result_json(r: &FactorResult) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("status".into(), Value::from(status_name(r.status)));
    m.insert(
        "factors".into(),
        r.factors
            .as_ref()
            .map_or(Value::Null, |(a, b)| ints([a, b])),
    );
    m.insert(
        "witness".into(),
        match (&r.witness_x, &r.witness_y) {
            (Some(x), Some(y)) => json!({"x": int(x), "y": int(y)}),
            _ => Value::Null,
        },
    );
    m
}

/// Runs the search; the split falls back to two primes when `n` is too small
/// for three.
pub fn factor_run(n: &BigUint, opts: &FactorOptions) -> anyhow::Result<(FactorResult, bool)> {
    let mut cfg = opts.config.clone();
    if !cfg.relaxed_split {
        if let Err(Error::Unsupported(_)) = odd_primorial_split(n, cfg.r_override, false) {
            cfg.relaxed_split = true;
        }
    }
    let result = match SearchPlan::prepare(n, &cfg)? {
        Prepared::Resolved(r) => r,
        Prepared::Search(plan) => run_parallel(&plan, opts.threads),
    };
    Ok((result, cfg.relaxed_split))
}

pub fn factor_cmd(n: &BigUint, opts: &FactorOptions) -> anyhow::Result<(OutputRecord, i32)> {
    let start = Instant::now();
    let (mut result, relaxed) = factor_run(n, opts)?;
    let mut payload = result_json(&result);
    if opts.baseline {
        let naive = naive_fermat(n, opts.baseline_limit)?;
        result.stats.naive_fermat_steps = naive.stats.naive_fermat_steps;
        let mut base = result_json(&naive);
        base.insert("steps".into(), int(naive.stats.candidates_tested));
        payload.insert("baseline".into(), Value::Object(base));
    }
    payload.insert("stats".into(), stats_json(&result.stats));
    payload.insert(
        "splitMode".into(),
        Value::from(if relaxed { "relaxed" } else { "strict" }),
    );
    let split = odd_primorial_split(n, opts.config.r_override, relaxed).ok();
    payload.insert(
        "split".into(),
        split.map_or(Value::Null, |s| {
            json!({
                "m": int(s.m),
                "r": int(s.r),
                "cPrime": int(s.c_prime),
                "cMain": int(s.c_main),
                "primes": ints(&s.primes),
            })
        }),
    );
    let cfg = &opts.config;
    let mut echo = inputs([
        ("n", int(n)),
        ("relaxedSplit", Value::Bool(cfg.relaxed_split)),
        ("batchGcd", Value::Bool(cfg.batch_gcd)),
        ("threads", int(opts.threads)),
        ("baseline", Value::Bool(opts.baseline)),
    ]);
    if let Some(r) = cfg.r_override {
        echo.insert("r".into(), int(r));
    }
    if let Some(k) = cfg.k_window {
        echo.insert("kWindow".into(), int(k));
    }
    if cfg.candidate_limit != u64::MAX {
        echo.insert("candidateLimit".into(), int(cfg.candidate_limit));
    }
    let code = if result.status == FactorStatus::Found {
        0
    } else {
        EXIT_NOT_FOUND
    };
    let record =
        OutputRecord::new("factor", echo, Value::Object(payload)).with_timing(start.elapsed());
    Ok((record, code))
}

pub fn density_rows(n: &BigInt, b_max: u64) -> anyhow::Result<Vec<DensityRow>> {
    if b_max < 3 {
        bail!("Bmax must be at least 3");
    }
    Ok(density_table(n, b_max)?)
}

pub const DENSITY_COLUMNS: [&str; 11] = [
    "bound",
    "omega",
    "modulus",
    "valid",
    "hypothesisHolds",
    "tau",
    "ratio",
    "normalized",
    "normalizedPi",
    "adjusted",
    "adjustedNormalized",
];

/// The row as `(column, value)` pairs in [`DENSITY_COLUMNS`] order. Integers
/// and fractions are strings, floats are numbers, missing values are null.
pub fn density_fields(row: &DensityRow) -> Vec<(&'static str, Value)> {
    let text = |v: Option<String>| v.map_or(Value::Null, Value::String);
    let float = |v: Option<f64>| v.map_or(Value::Null, |f| json!(f));
    vec![
        ("bound", int(row.bound)),
        ("omega", int(row.omega)),
        ("modulus", int(&row.modulus)),
        ("valid", Value::Bool(row.valid)),
        ("hypothesisHolds", Value::Bool(row.hypothesis_holds)),
        ("tau", text(row.tau.as_ref().map(ToString::to_string))),
        ("ratio", text(row.ratio.as_ref().map(ToString::to_string))),
        ("normalized", float(row.normalized)),
        ("normalizedPi", float(row.normalized_pi)),
        (
            "adjusted",
            text(row.adjusted.as_ref().map(ToString::to_string)),
        ),
        ("adjustedNormalized", float(row.adjusted_normalized)),
    ]
}

pub fn density_records(n: &BigInt, b_max: u64, rows: &[DensityRow]) -> Vec<OutputRecord> {
    rows.iter()
        .map(|row| {
            let payload: Map<String, Value> = density_fields(row)
                .into_iter()
                .map(|(k, v)| (k.to_owned(), v))
                .collect();
            OutputRecord::new(
                "density",
                inputs([("n", int(n)), ("Bmax", int(b_max))]),
                Value::Object(payload),
            )
        })
        .collect()
}

pub fn write_density_csv<W: Write>(rows: &[DensityRow], out: W) -> anyhow::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(DENSITY_COLUMNS)?;
    for row in rows {
        let cells: Vec<String> = density_fields(row)
            .into_iter()
            .map(|(_, v)| match v {
                Value::Null => String::new(),
                Value::String(s) => s,
                other => other.to_string(),
            })
            .collect();
        w.write_record(&cells)?;
    }
    w.flush()?;
    Ok(())
}

/// Parses `--n` for commands that accept any integer.
pub fn parse_int(s: &str) -> anyhow::Result<BigInt> {
    s.trim()
        .parse()
        .with_context(|| format!("invalid integer `{s}`"))
}

/// Parses `--n` for `factor`, which needs a positive integer.
pub fn parse_natural(s: &str) -> anyhow::Result<BigUint> {
    let v = parse_int(s)?;
    if !v.is_positive() {
        bail!("n must be positive");
    }
    Ok(v.magnitude().clone())
}
