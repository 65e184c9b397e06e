//! Check suites that cross the symbolic engine against the oracle and
//! against independent recomputations.
//!
//! Each check records what it expected, what it got and how long it took.
//! A check that runs out of budget aborts the suite instead of failing
//! quietly.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::time::Instant;

use anyhow::Result;
use kron_core::fib3::{
    compare3_holds, compare4_holds, fib_identity_check, quasi_length_dim, tau_power_closed_form,
    ComponentGrid,
};
use kron_core::grorder::compare;
use kron_core::grsym::{landing_cmp, strictly_between, FamilyBounds, UniverseBounds};
use kron_core::repkit::{
    find_indecomposable, find_quasi_length_two, in_b, is_indecomposable, run_oracle,
    verify_certificate, CanonicalKind, GrCertificate, OracleConfig, OracleTable, PrimeField, Rep,
    RepError,
};
use kron_core::{
    DimVec, GrMeasure, KroneckerContext, ModuleLabel, RegularCoord, RootKind, SymbolicEngine,
};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::Suite;

/// Knobs shared by all suites.
#[derive(Clone, Debug)]
pub struct Settings {
    pub seed: u64,
    pub oracle: OracleConfig,
    /// Draws allowed per indecomposable search.
    pub max_tries: usize,
    pub order_triples: usize,
    pub samples_tau_shift: usize,
    pub samples_quasi_simple: usize,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            seed: 1,
            oracle: OracleConfig::default(),
            max_tries: 1000,
            order_triples: 100_000,
            samples_tau_shift: 100,
            samples_quasi_simple: 50,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub id: String,
    pub status: Status,
    pub expected: String,
    pub actual: String,
    pub runtime_ms: String,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub suite: String,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl VerifyReport {
    pub fn new(suite: &str, checks: Vec<Check>) -> Self {
        let pass = checks.iter().all(Check::passed);
        VerifyReport {
            suite: suite.to_string(),
            checks,
            pass,
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let tag = if c.passed() { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "{tag}\t{}\t{} ms", c.id, c.runtime_ms);
            if !c.passed() {
                let _ = writeln!(out, "\texpected: {}\n\tactual:   {}", c.expected, c.actual);
            }
        }
        let passed = self.checks.iter().filter(|c| c.passed()).count();
        let verdict = if self.pass { "pass" } else { "FAIL" };
        let _ = writeln!(
            out,
            "{}: {passed}/{} checks, {verdict}",
            self.suite,
            self.checks.len()
        );
        out
    }
}

fn is_budget(e: &anyhow::Error) -> bool {
    e.chain().any(|c| {
        matches!(
            c.downcast_ref::<RepError>(),
            Some(RepError::BudgetExceeded { .. })
        )
    })
}

/// Runs `f` and passes iff its result equals `expected`.
fn check(
    id: impl Into<String>,
    expected: impl Into<String>,
    f: impl FnOnce() -> Result<String>,
) -> Result<Check> {
    let expected = expected.into();
    let e2 = expected.clone();
    judge(id, expected, || {
        f().map(|actual| {
            let ok = actual == e2;
            (actual, ok)
        })
    })
}

/// Runs `f`, which reports what it saw and whether that is acceptable.
fn judge(
    id: impl Into<String>,
    expected: impl Into<String>,
    f: impl FnOnce() -> Result<(String, bool)>,
) -> Result<Check> {
    let start = Instant::now();
    let (actual, ok) = match f() {
        Ok(r) => r,
        Err(e) if is_budget(&e) => return Err(e),
        Err(e) => (format!("error: {e:#}"), false),
    };
    Ok(Check {
        id: id.into(),
        status: if ok { Status::Pass } else { Status::Fail },
        expected: expected.into(),
        actual,
        runtime_ms: start.elapsed().as_millis().to_string(),
    })
}

fn ctx3() -> KroneckerContext {
    KroneckerContext::new(3).expect("n = 3 is valid")
}

fn f2() -> PrimeField {
    PrimeField::new(2).expect("2 is prime")
}

fn measure(xs: &[u64]) -> GrMeasure {
    GrMeasure::from_u64s(xs).expect("golden measures are increasing")
}

fn join<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn run_suite(suite: Suite, s: &Settings) -> Result<VerifyReport> {
    let (name, checks) = match suite {
        Suite::Fib => ("fib", fib(s)?),
        Suite::Figures => ("figures", figures()?),
        Suite::Order => ("order", order_axioms(s.seed, s.order_triples)?),
        Suite::Successor => ("successor", successor()?),
        Suite::OracleSmall => ("oracle-small", oracle_small(s)?),
        Suite::OracleLanding => ("oracle-landing", landing(s)?),
        Suite::All => {
            let mut all = fib(s)?;
            all.extend(figures()?);
            all.extend(order_axioms(s.seed, s.order_triples)?);
            all.extend(successor()?);
            all.extend(oracle_small(s)?);
            all.extend(landing(s)?);
            ("all", all)
        }
    };
    Ok(VerifyReport::new(name, checks))
}

pub fn fib(s: &Settings) -> Result<Vec<Check>> {
    Ok(vec![
        tau_closed_form(s.seed, 50, 50)?,
        telescoped_quasi_length(30)?,
        fib_identities(40)?,
        component_comparisons(16, 12)?,
    ])
}

pub fn figures() -> Result<Vec<Check>> {
    let mut out = end_sequences()?;
    out.push(grid_figure()?);
    Ok(out)
}

pub fn successor() -> Result<Vec<Check>> {
    Ok(vec![
        betweenness()?,
        take_off_increasing(30)?,
        central_above_take_off()?,
    ])
}

pub fn oracle_small(s: &Settings) -> Result<Vec<Check>> {
    let (mut checks, mut measured) = oracle_instances(s)?;
    let (more, sampled) = sampling(s)?;
    checks.extend(more);
    measured.extend(sampled);
    checks.extend(invariants(&measured, &s.oracle)?);
    Ok(checks)
}

/// `P_1..P_4` and `Q_0..Q_3` against their polynomial forms in `n`.
pub fn end_sequences() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for n in 3u64..=6 {
        let ctx = KroneckerContext::new(n as u32)?;
        let p = [
            (0, 1),
            (1, n),
            (n, n * n - 1),
            (n * n - 1, n * n * n - 2 * n),
        ];
        let q = [
            (1, 0),
            (n, 1),
            (n * n - 1, n),
            (n * n * n - 2 * n, n * n - 1),
        ];
        let fmt = |xs: &[(u64, u64)]| join(xs.iter().map(|&(a, b)| DimVec::new(a, b)));
        out.push(check(format!("preprojectives/n{n}"), fmt(&p), || {
            Ok(join(
                (1..=4)
                    .map(|r| ctx.preprojective_dim(r))
                    .collect::<Result<Vec<_>, _>>()?,
            ))
        })?);
        out.push(check(format!("preinjectives/n{n}"), fmt(&q), || {
            Ok(join(
                (0..=3)
                    .map(|r| ctx.preinjective_dim(r))
                    .collect::<Result<Vec<_>, _>>()?,
            ))
        })?);
    }
    Ok(out)
}

/// Cells of the `(1,1)` component window as `(j, t, dim)`.
pub const GRID_FIGURE: [(u32, i64, (u64, u64)); 13] = [
    (1, -2, (34, 13)),
    (1, -1, (5, 2)),
    (1, 0, (1, 1)),
    (1, 1, (2, 5)),
    (1, 2, (13, 34)),
    (2, -2, (39, 15)),
    (2, -1, (6, 3)),
    (2, 0, (3, 6)),
    (2, 1, (15, 39)),
    (3, -1, (8, 8)),
    (4, -2, (42, 21)),
    (5, -2, (55, 55)),
    (5, -3, (275, 110)),
];

pub fn grid_figure() -> Result<Check> {
    let expected = join(GRID_FIGURE.iter().map(|&(_, _, (a, b))| DimVec::new(a, b)));
    check("grid-figure", expected, || {
        let g = ComponentGrid::new(&DimVec::new(1u32, 1u32), 2, 5)?;
        let got = GRID_FIGURE.iter().map(|&(j, t, _)| {
            g.get(j, t)
                .map_or_else(|| "missing".to_string(), |d| d.to_string())
        });
        Ok(join(got))
    })
}

/// Closed-form `τ^k` against step-by-step Coxeter iteration on random
/// imaginary roots.
pub fn tau_closed_form(seed: u64, anchors: usize, k_max: i64) -> Result<Check> {
    let total = anchors * (2 * k_max as usize + 1);
    check("tau-closed-form", format!("{total} agree"), || {
        let ctx = ctx3();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut agree = 0;
        let mut picked = 0;
        while picked < anchors {
            let v = DimVec::new(rng.gen_range(1u32..=60), rng.gen_range(1u32..=60));
            if ctx.classify_root(&v)? != RootKind::Imaginary {
                continue;
            }
            picked += 1;
            for k in -k_max..=k_max {
                if tau_power_closed_form(&v, k)? == ctx.coxeter_apply(&v, k)? {
                    agree += 1;
                }
            }
        }
        Ok(format!("{agree} agree"))
    })
}

/// `X_m` against the telescoped sum of `τ^{-s}(1,1)` over
/// `-(m/2) ≤ s ≤ (m-1)/2`.
pub fn telescoped_quasi_length(m_max: u64) -> Result<Check> {
    check("quasi-length-dims", format!("{m_max} agree"), || {
        let ctx = ctx3();
        let one = DimVec::new(1u32, 1u32);
        let mut agree = 0;
        for m in 1..=m_max {
            let lo = -((m / 2) as i64);
            let hi = ((m - 1) / 2) as i64;
            let mut sum = DimVec::default();
            for s in lo..=hi {
                sum = &sum + &ctx.coxeter_apply(&one, -s)?;
            }
            if quasi_length_dim(m)? == sum {
                agree += 1;
            }
        }
        Ok(format!("{agree} agree"))
    })
}

pub fn fib_identities(max: usize) -> Result<Check> {
    check("fibonacci-identity", "true", || {
        for r in 1..=max {
            for s in 1..=max {
                if !fib_identity_check(r, s)? {
                    return Ok(format!("fails at r={r}, s={s}"));
                }
            }
        }
        Ok("true".into())
    })
}

pub fn component_comparisons(m_max: u64, i_max: u64) -> Result<Check> {
    check("component-comparisons", "true", || {
        for m in 1..=m_max {
            for i in 0..=i_max {
                let ok = if m % 2 == 1 {
                    compare3_holds(m, i)?
                } else {
                    compare4_holds(m, i)?
                };
                if !ok {
                    return Ok(format!("fails at m={m}, i={i}"));
                }
            }
        }
        Ok("true".into())
    })
}

fn family_universe(max_preprojective: u32) -> UniverseBounds {
    UniverseBounds {
        max_preprojective,
        families: Some(FamilyBounds {
            sink_dims: vec![1, 2],
            max_shift: 3,
            max_quasi_length: 5,
        }),
    }
}

/// No measure of the universe falls strictly between `μ(τ^{-i}X[j])` and
/// `μ(τ^{-i}X[j+1])`.
pub fn betweenness() -> Result<Check> {
    check("betweenness", "0 intruders in 32 gaps", || {
        let engine = SymbolicEngine::new(ctx3());
        let universe = engine.measure_universe(&family_universe(20))?;
        let mut gaps = 0;
        let mut intruders = Vec::new();
        for c in [1, 2] {
            for i in 0..=3 {
                for j in 1..5 {
                    let lo = engine.family_measure(RegularCoord::new(c, i, j))?;
                    let hi = engine.family_measure(RegularCoord::new(c, i, j + 1))?;
                    gaps += 1;
                    for e in strictly_between(&universe, &lo, &hi) {
                        intruders.push(e.measure.to_string());
                    }
                }
            }
        }
        if intruders.is_empty() {
            Ok(format!("0 intruders in {gaps} gaps"))
        } else {
            Ok(format!("intruders: {}", intruders.join(" ")))
        }
    })
}

pub fn take_off_increasing(r_max: u32) -> Result<Check> {
    check("take-off-increasing", "true", || {
        let engine = SymbolicEngine::new(ctx3());
        for r in 1..r_max {
            let a = engine.preprojective_measure(r)?;
            let b = engine.preprojective_measure(r + 1)?;
            if compare(&a, &b) != Ordering::Less {
                return Ok(format!("μ(P_{r}) ≥ μ(P_{})", r + 1));
            }
        }
        Ok("true".into())
    })
}

/// Every family measure lies above every preprojective measure.
pub fn central_above_take_off() -> Result<Check> {
    check("central-above-take-off", "true", || {
        let engine = SymbolicEngine::new(ctx3());
        let universe = engine.measure_universe(&family_universe(30))?;
        let top_take_off = engine.preprojective_measure(30)?;
        for e in &universe {
            let family = e.labels.iter().any(|l| matches!(l, ModuleLabel::Family(_)));
            if family && compare(&e.measure, &top_take_off) != Ordering::Greater {
                return Ok(format!("{} is not above take-off", e.measure));
            }
        }
        Ok("true".into())
    })
}

fn brute_compare(a: &BTreeSet<u64>, b: &BTreeSet<u64>) -> Ordering {
    match a.symmetric_difference(b).next() {
        None => Ordering::Equal,
        Some(x) if b.contains(x) => Ordering::Less,
        Some(_) => Ordering::Greater,
    }
}

fn random_set(rng: &mut ChaCha8Rng, max_len: usize, max_entry: u64) -> BTreeSet<u64> {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| rng.gen_range(1..=max_entry)).collect()
}

/// Draws a triple; one mode in three plants a shared prefix so that the
/// sandwich premise actually occurs.
fn random_triple(rng: &mut ChaCha8Rng) -> [BTreeSet<u64>; 3] {
    match rng.gen_range(0..3) {
        0 => [0, 0, 0].map(|_| random_set(rng, 8, 12)),
        1 => [0, 0, 0].map(|_| random_set(rng, 12, 1_000_000)),
        _ => {
            let base = random_set(rng, 6, 12);
            let tail = |rng: &mut ChaCha8Rng, from: u64| -> BTreeSet<u64> {
                let len = rng.gen_range(0..4);
                (0..len)
                    .map(|_| rng.gen_range(from + 1..=from + 12))
                    .collect()
            };
            let top = base.iter().max().copied().unwrap_or(0);
            let mut extended = base.clone();
            extended.extend(tail(rng, top));
            let keep = rng.gen_range(0..=base.len());
            let mut other: BTreeSet<u64> = base.iter().take(keep).copied().collect();
            let from = other.iter().max().copied().unwrap_or(0);
            other.extend(tail(rng, from));
            [base, other, extended]
        }
    }
}

/// Totality, transitivity and the sandwich property on random triples,
/// with every comparison also checked against a symmetric-difference
/// evaluation.
pub fn order_axioms(seed: u64, triples: usize) -> Result<Vec<Check>> {
    let mut sandwich_hits = 0usize;
    let main = check(
        "order-axioms",
        format!("0 violations in {triples} triples"),
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut violations = Vec::new();
            for _ in 0..triples {
                let sets = random_triple(&mut rng);
                let ms: Vec<GrMeasure> = sets
                    .iter()
                    .map(|s| GrMeasure::new(s.iter().map(|&x| BigUint::from(x)).collect()))
                    .collect::<Result<_, _>>()?;
                for x in 0..3 {
                    for y in 0..3 {
                        let c = compare(&ms[x], &ms[y]);
                        if c != brute_compare(&sets[x], &sets[y])
                            || c != compare(&ms[y], &ms[x]).reverse()
                            || (c == Ordering::Equal) != (ms[x] == ms[y])
                        {
                            violations.push(format!("total {} {}", ms[x], ms[y]));
                        }
                    }
                }
                for (i, j, k) in [
                    (0, 1, 2),
                    (0, 2, 1),
                    (1, 0, 2),
                    (1, 2, 0),
                    (2, 0, 1),
                    (2, 1, 0),
                ] {
                    let (a, b, c) = (&ms[i], &ms[j], &ms[k]);
                    if a <= b && b <= c && a > c {
                        violations.push(format!("transitive {a} {b} {c}"));
                    }
                    if a < b && b < c && c.starts_with(a) {
                        sandwich_hits += 1;
                        if !b.starts_with(a) {
                            violations.push(format!("sandwich {a} {b} {c}"));
                        }
                    }
                }
            }
            Ok(match violations.first() {
                None => format!("0 violations in {triples} triples"),
                Some(v) => format!("{} violations, first: {v}", violations.len()),
            })
        },
    )?;
    let coverage = judge("sandwich-coverage", "premise met at least once", || {
        Ok((
            format!("premise met {sandwich_hits} times"),
            sandwich_hits > 0,
        ))
    })?;
    Ok(vec![main, coverage])
}

/// An oracle run kept for the invariant checks.
pub struct Measured {
    pub id: String,
    pub table: OracleTable,
}

struct Instance {
    id: &'static str,
    golden: &'static [u64],
    symbolic: Option<ModuleLabel>,
}

const INSTANCES: [Instance; 8] = [
    Instance {
        id: "p1",
        golden: &[1],
        symbolic: Some(ModuleLabel::Preprojective(1)),
    },
    Instance {
        id: "p2",
        golden: &[1, 4],
        symbolic: Some(ModuleLabel::Preprojective(2)),
    },
    Instance {
        id: "p3",
        golden: &[1, 4, 11],
        symbolic: Some(ModuleLabel::Preprojective(3)),
    },
    Instance {
        id: "x-1-1",
        golden: &[1, 2],
        symbolic: Some(ModuleLabel::Family(RegularCoord {
            sink_dim: 1,
            tau_shift: 0,
            quasi_length: 1,
        })),
    },
    Instance {
        id: "x-1-2",
        golden: &[1, 3],
        symbolic: Some(ModuleLabel::Family(RegularCoord {
            sink_dim: 2,
            tau_shift: 0,
            quasi_length: 1,
        })),
    },
    Instance {
        id: "tau-x-2-5",
        golden: &[1, 4, 7],
        symbolic: Some(ModuleLabel::Family(RegularCoord {
            sink_dim: 1,
            tau_shift: 1,
            quasi_length: 1,
        })),
    },
    Instance {
        id: "x2-3-6",
        golden: &[1, 2, 9],
        symbolic: Some(ModuleLabel::Family(RegularCoord {
            sink_dim: 1,
            tau_shift: 0,
            quasi_length: 2,
        })),
    },
    // the chain P_1 < (1,1) < (2,1) < Q_1 gives {1,2,3,4}, above {1,2,4}
    Instance {
        id: "q1",
        golden: &[1, 2, 3, 4],
        symbolic: None,
    },
];

fn build_instance(id: &str, s: &Settings) -> Result<Rep> {
    let (ctx, f) = (ctx3(), f2());
    let canonical = |kind| Rep::build_canonical(ctx, f.clone(), &kind);
    let search = |a, b| {
        find_indecomposable(
            ctx,
            f.clone(),
            a,
            b,
            s.seed,
            s.max_tries,
            s.oracle.end_budget,
        )
    };
    Ok(match id {
        "p1" => canonical(CanonicalKind::P1)?,
        "p2" => canonical(CanonicalKind::P2)?,
        "q1" => canonical(CanonicalKind::Q1)?,
        "x-1-1" => canonical(CanonicalKind::OneC {
            columns: vec![vec![1], vec![1], vec![0]],
        })?,
        "p3" => search(3, 8)?.0,
        "x-1-2" => search(1, 2)?.0,
        "tau-x-2-5" => search(2, 5)?.0,
        "x2-3-6" => {
            find_quasi_length_two(ctx, f.clone(), 1, s.seed, s.max_tries, s.oracle.end_budget)?.rep
        }
        _ => unreachable!("unknown instance {id}"),
    })
}

fn certificate_round_trip(rep: &Rep, cert: &GrCertificate, end_budget: u64) -> Result<String> {
    verify_certificate(rep, cert, end_budget)?;
    let back = GrCertificate::from_json(&cert.to_json(), rep)?;
    Ok(if &back == cert {
        "valid".into()
    } else {
        "round trip differs".into()
    })
}

/// Oracle measures of the named instances against their goldens, the
/// symbolic engine, certificate checks and membership in the class of
/// regular modules with preprojective GR submodules.
pub fn oracle_instances(s: &Settings) -> Result<(Vec<Check>, Vec<Measured>)> {
    let engine = SymbolicEngine::new(ctx3());
    let mut checks = Vec::new();
    let mut measured = Vec::new();
    for inst in &INSTANCES {
        let golden = measure(inst.golden);
        if let Some(label) = inst.symbolic {
            checks.push(check(
                format!("symbolic/{}", inst.id),
                golden.to_string(),
                || Ok(engine.label_measure(label)?.to_string()),
            )?);
        }
        let mut table = None;
        checks.push(check(
            format!("oracle/{}", inst.id),
            golden.to_string(),
            || {
                let rep = build_instance(inst.id, s)?;
                let t = run_oracle(&rep, &s.oracle)?;
                let m = t.measure();
                table = Some(t);
                Ok(m.to_string())
            },
        )?);
        let Some(table) = table else { continue };
        let cert = table.certificate();
        checks.push(check(format!("certificate/{}", inst.id), "valid", || {
            certificate_round_trip(table.rep(), &cert, s.oracle.end_budget)
        })?);
        measured.push(Measured {
            id: inst.id.to_string(),
            table,
        });
    }
    for (id, expected) in [("x-1-1", true), ("tau-x-2-5", true), ("x2-3-6", false)] {
        let Some(m) = measured.iter().find(|m| m.id == id) else {
            continue;
        };
        checks.push(check(format!("in-b/{id}"), expected.to_string(), || {
            Ok(in_b(m.table.rep(), &s.oracle)?.to_string())
        })?);
    }
    Ok((checks, measured))
}

/// Seeded random indecomposables of dimension `(2,5)` and `(1,1)` all have
/// the closed-form measure.
pub fn sampling(s: &Settings) -> Result<(Vec<Check>, Vec<Measured>)> {
    let mut measured = Vec::new();
    let mut checks = Vec::new();
    for (id, (a, b), count, golden) in [
        (
            "sample/2-5",
            (2, 5),
            s.samples_tau_shift,
            measure(&[1, 4, 7]),
        ),
        (
            "sample/1-1",
            (1, 1),
            s.samples_quasi_simple,
            measure(&[1, 2]),
        ),
    ] {
        checks.push(check(id, format!("{count} x {golden}"), || {
            let mut mismatches = Vec::new();
            for k in 0..count as u64 {
                let seed = s.seed.wrapping_mul(1_000_003).wrapping_add(k);
                let (rep, _) = find_indecomposable(
                    ctx3(),
                    f2(),
                    a,
                    b,
                    seed,
                    s.max_tries,
                    s.oracle.end_budget,
                )?;
                let table = run_oracle(&rep, &s.oracle)?;
                if table.measure() != golden {
                    mismatches.push(format!("seed {seed}: {}", table.measure()));
                }
                measured.push(Measured {
                    id: format!("{id}/{k}"),
                    table,
                });
            }
            Ok(match mismatches.first() {
                None => format!("{count} x {golden}"),
                Some(m) => format!("{} mismatches, first {m}", mismatches.len()),
            })
        })?);
    }
    Ok((checks, measured))
}

/// Quotients by GR submodules are indecomposable, and proper indecomposable
/// submodules have smaller measure. The largest few submodules are
/// re-measured by a fresh oracle run on the restricted representation.
pub fn invariants(measured: &[Measured], cfg: &OracleConfig) -> Result<Vec<Check>> {
    let mut factors = 0usize;
    let factor = check("gr-factor-indecomposable", "0 failures", || {
        let mut bad = Vec::new();
        for m in measured {
            let rep = m.table.rep();
            if rep.length() == 1 {
                continue;
            }
            let subs = m.table.gr_submodules();
            if subs.is_empty() {
                bad.push(format!("{}: no GR submodule", m.id));
            }
            for u in subs {
                factors += 1;
                let q = rep.quotient(&u)?;
                if !is_indecomposable(&q, cfg.end_budget)? {
                    bad.push(format!("{}: {} / {}", m.id, rep.dim(), u.dim()));
                }
            }
        }
        Ok(match bad.first() {
            None => "0 failures".into(),
            Some(b) => format!("{} failures, first {b}", bad.len()),
        })
    })?;
    let coverage = judge("gr-factor-coverage", "at least one quotient", || {
        Ok((format!("{factors} quotients"), factors > 0))
    })?;
    let mono = check("submodule-monotonicity", "0 failures", || {
        let mut bad = Vec::new();
        for m in measured {
            let rep = m.table.rep();
            let top = m.table.measure();
            let mut proper: Vec<_> = m
                .table
                .indecomposable_subreps()
                .into_iter()
                .filter(|(u, _)| u.length() < rep.length())
                .collect();
            for (u, mu) in &proper {
                if compare(mu, &top) != Ordering::Less {
                    bad.push(format!("{}: μ{} = {mu} not below {top}", m.id, u.dim()));
                }
            }
            proper.sort_by_key(|(u, _)| std::cmp::Reverse(u.length()));
            for (u, mu) in proper.iter().take(3) {
                let fresh = run_oracle(&rep.restrict(u)?, cfg)?.measure();
                if &fresh != mu {
                    bad.push(format!(
                        "{}: μ{} is {fresh} alone, {mu} inside",
                        m.id,
                        u.dim()
                    ));
                }
            }
        }
        Ok(match bad.first() {
            None => "0 failures".into(),
            Some(b) => format!("{} failures, first {b}", bad.len()),
        })
    })?;
    Ok(vec![factor, coverage, mono])
}

/// The oracle measure of `Q_2` against the take-off and central measures
/// of the universe and against `μ(Q_1)`.
pub fn landing(s: &Settings) -> Result<Vec<Check>> {
    let mut measured = None;
    let mut checks = vec![judge(
        "landing/q2-above-central",
        "above every family measure",
        || {
            let (rep, _) =
                find_indecomposable(ctx3(), f2(), 8, 3, s.seed, s.max_tries, s.oracle.end_budget)?;
            let table = run_oracle(&rep, &s.oracle)?;
            let q2 = table.measure();
            measured = Some(table);
            let engine = SymbolicEngine::new(ctx3());
            let universe = engine.measure_universe(&family_universe(20))?;
            let below = universe
                .iter()
                .filter(|e| compare(&e.measure, &q2).is_ge())
                .count();
            Ok(if below == 0 {
                ("above every family measure".into(), true)
            } else {
                (
                    format!("{q2} is not above {below} universe measures"),
                    false,
                )
            })
        },
    )?];
    if let Some(table) = measured {
        let q1 = measure(&[1, 2, 3, 4]);
        let q2 = table.measure();
        checks.push(check("landing/q2-below-q1", "true", || {
            let order = landing_cmp(2, 1)?;
            Ok((compare(&q2, &q1) == order && order == Ordering::Less).to_string())
        })?);
        checks.extend(invariants(
            &[Measured {
                id: "q2".into(),
                table,
            }],
            &s.oracle,
        )?);
    }
    Ok(checks)
}
