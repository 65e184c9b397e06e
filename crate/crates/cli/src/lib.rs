//! The `kron` command line: symbolic queries, oracle runs and verify suites.
//!
//! Every number in the output is printed as a decimal string, and every
//! command is a pure function of its flags and seed.

pub mod verify;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::ops::RangeInclusive;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use kron_core::fib3::ComponentGrid;
use kron_core::repkit::{
    find_indecomposable, find_quasi_length_two, run_oracle, CanonicalKind, OracleConfig,
    PrimeField, Rep, RepError,
};
use kron_core::{DimVec, KroneckerContext, RegularCoord, RootKind, SymbolicEngine};
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_VERIFY_FAILED: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "kron",
    version,
    about = "Gabriel-Roiter measures on n-Kronecker modules"
)]
pub struct Cli {
    /// Worker threads for oracle runs; defaults to one per core.
    #[arg(long, global = true, env = "KRON_WORKERS")]
    pub workers: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List positive roots up to a given length.
    Roots(RootsArgs),
    /// Apply powers of the Coxeter transformation to a dimension vector.
    Orbit(OrbitArgs),
    /// Closed-form measure of the regular module τ^{-i}X[j] with udim X = (1,c).
    Measure(MeasureArgs),
    /// Compute a measure from an explicit representation.
    Oracle(OracleArgs),
    /// Print a window of the regular component containing (1,1) or (1,2).
    Grid(GridArgs),
    /// Run a check suite and report pass or fail per check.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct RootsArgs {
    #[arg(long, default_value_t = 3)]
    pub n: u32,
    #[arg(long, default_value_t = 8)]
    pub max_length: u64,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct OrbitArgs {
    #[arg(long, default_value_t = 3)]
    pub n: u32,
    #[arg(long, value_parser = parse_dim)]
    pub dim: DimVec,
    /// A single power like `-1` or an inclusive range like `-2..2`.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_k_range, default_value = "0")]
    pub k: RangeInclusive<i64>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct MeasureArgs {
    #[arg(long, default_value_t = 3)]
    pub n: u32,
    #[arg(long)]
    pub c: u32,
    #[arg(long, default_value_t = 0)]
    pub i: u32,
    #[arg(long, default_value_t = 1)]
    pub j: u32,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Builtin {
    P1,
    P2,
    Q0,
    Q1,
    /// Quasi-length two module over a random (1,c) indecomposable.
    X2,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct Budgets {
    /// Maximum number of subspaces the oracle may visit.
    #[arg(long, default_value_t = 1_000_000)]
    pub budget_lattice: u64,
    /// Maximum size of an endomorphism algebra to enumerate.
    #[arg(long, default_value_t = 1 << 20)]
    pub budget_end: u64,
}

impl Budgets {
    pub fn config(&self) -> OracleConfig {
        OracleConfig {
            lattice_budget: self.budget_lattice,
            end_budget: self.budget_end,
        }
    }
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("input").required(true).args(["file", "builtin", "dim"]))]
pub struct OracleArgs {
    #[arg(long, default_value_t = 3)]
    pub n: u32,
    #[arg(long, default_value_t = 2)]
    pub p: u32,
    /// Representation in JSON form.
    #[arg(long)]
    pub file: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub builtin: Option<Builtin>,
    /// Search for a random indecomposable of this dimension.
    #[arg(long, value_parser = parse_dim)]
    pub dim: Option<DimVec>,
    /// Sink dimension of the quasi-simple for `--builtin x2`.
    #[arg(long, default_value_t = 1)]
    pub c: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Draws allowed when searching for an indecomposable.
    #[arg(long, default_value_t = 1000)]
    pub tries: usize,
    /// Write the representation that was measured to this path.
    #[arg(long)]
    pub save_rep: Option<PathBuf>,
    #[command(flatten)]
    pub budgets: Budgets,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    #[arg(long, default_value_t = 3)]
    pub n: u32,
    /// Anchor quasi-simple, (1,1) or (1,2).
    #[arg(long, value_parser = parse_dim, default_value = "1,1")]
    pub dim: DimVec,
    /// Half-width of the window in τ-steps.
    #[arg(long, default_value_t = 2)]
    pub radius: u32,
    #[arg(long, default_value_t = 5)]
    pub ql_max: u32,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Fib,
    Figures,
    Order,
    Successor,
    OracleSmall,
    OracleLanding,
    All,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[command(flatten)]
    pub budgets: Budgets,
    #[arg(long)]
    pub json: bool,
}

fn parse_dim(s: &str) -> Result<DimVec, String> {
    DimVec::parse_pair(s).map_err(|e| e.to_string())
}

fn parse_k_range(s: &str) -> Result<RangeInclusive<i64>, String> {
    let int = |t: &str| {
        t.trim()
            .parse::<i64>()
            .map_err(|_| format!("bad power {t:?}"))
    };
    match s.split_once("..") {
        Some((lo, hi)) => {
            let (lo, hi) = (int(lo)?, int(hi.trim_start_matches('='))?);
            if lo > hi {
                return Err(format!("empty range {s}"));
            }
            Ok(lo..=hi)
        }
        None => {
            let k = int(s)?;
            Ok(k..=k)
        }
    }
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    if let Some(w) = cli.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build_global()
        {
            eprintln!("error: {e}");
            return EXIT_ERROR;
        }
    }
    match execute(&cli.command) {
        Ok(Outcome { text, passed }) => {
            print!("{text}");
            if passed {
                EXIT_OK
            } else {
                EXIT_VERIFY_FAILED
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            exit_code_for(&e)
        }
    }
}

/// `3` when a budget ran out anywhere in the error chain, `1` otherwise.
pub fn exit_code_for(e: &anyhow::Error) -> i32 {
    let budget = e.chain().any(|c| {
        matches!(
            c.downcast_ref::<RepError>(),
            Some(RepError::BudgetExceeded { .. })
        )
    });
    if budget {
        EXIT_BUDGET
    } else {
        EXIT_ERROR
    }
}

/// What a command prints, and whether it counts as success.
pub struct Outcome {
    pub text: String,
    pub passed: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, passed: true }
    }
}

fn to_json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json serializes");
    s.push('\n');
    s
}

fn dim_json(v: &DimVec) -> Value {
    json!([v.source.to_string(), v.sink.to_string()])
}

pub fn execute(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::Roots(a) => roots(a),
        Command::Orbit(a) => orbit(a),
        Command::Measure(a) => measure(a),
        Command::Oracle(a) => oracle(a),
        Command::Grid(a) => grid(a),
        Command::Verify(a) => verify_cmd(a),
    }
}

fn roots(a: &RootsArgs) -> Result<Outcome> {
    let ctx = KroneckerContext::new(a.n)?;
    let mut rows = Vec::new();
    for len in 1..=a.max_length {
        for src in 0..=len {
            let v = DimVec::new(src, len - src);
            let kind = ctx.classify_root(&v)?;
            if kind == RootKind::NotRoot {
                continue;
            }
            let position = ctx.classify_position(&v)?;
            rows.push((v, kind, position));
        }
    }
    if a.json {
        let items: Vec<Value> = rows
            .iter()
            .map(|(v, k, p)| {
                json!({
                    "dim": dim_json(v),
                    "length": v.length().to_string(),
                    "kind": k.to_string(),
                    "position": p.to_string(),
                })
            })
            .collect();
        return Ok(Outcome::ok(to_json_text(&Value::Array(items))));
    }
    let mut out = String::from("dim\tlength\tkind\tposition\n");
    for (v, k, p) in rows {
        writeln!(out, "{v}\t{}\t{k}\t{p}", v.length())?;
    }
    Ok(Outcome::ok(out))
}

fn orbit(a: &OrbitArgs) -> Result<Outcome> {
    let ctx = KroneckerContext::new(a.n)?;
    let mut rows = Vec::new();
    for k in a.k.clone() {
        rows.push((k, ctx.coxeter_apply(&a.dim, k)?));
    }
    if a.json {
        let items: Vec<Value> = rows
            .iter()
            .map(|(k, v)| json!({"k": k.to_string(), "dim": dim_json(v)}))
            .collect();
        return Ok(Outcome::ok(to_json_text(&Value::Array(items))));
    }
    let mut out = String::from("k\tdim\n");
    for (k, v) in rows {
        writeln!(out, "{k}\t{v}")?;
    }
    Ok(Outcome::ok(out))
}

fn measure(a: &MeasureArgs) -> Result<Outcome> {
    let engine = SymbolicEngine::new(KroneckerContext::new(a.n)?);
    let d = engine.descriptor(RegularCoord::new(a.c, a.i, a.j))?;
    if a.json {
        let v = json!({
            "coord": {"c": a.c.to_string(), "i": a.i.to_string(), "j": a.j.to_string()},
            "dim": dim_json(&d.dim),
            "length": d.length.to_string(),
            "measure": d.measure,
            "gr_submodule": d.gr_submodule.to_string(),
        });
        return Ok(Outcome::ok(to_json_text(&v)));
    }
    let mut out = String::new();
    writeln!(out, "module\t{}", kron_core::ModuleLabel::Family(d.coord))?;
    writeln!(out, "dim\t{}", d.dim)?;
    writeln!(out, "length\t{}", d.length)?;
    writeln!(out, "measure\t{}", d.measure)?;
    writeln!(out, "gr_submodule\t{}", d.gr_submodule)?;
    Ok(Outcome::ok(out))
}

fn oracle_input(a: &OracleArgs) -> Result<Rep> {
    if let Some(path) = &a.file {
        let text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        return Ok(Rep::from_json_str(&text)?);
    }
    let ctx = KroneckerContext::new(a.n)?;
    let field = PrimeField::new(a.p)?;
    if let Some(dim) = &a.dim {
        let Some((src, sink)) = dim.to_u64s() else {
            bail!("dimension {dim} is too large");
        };
        let (rep, _) = find_indecomposable(
            ctx,
            field,
            src as usize,
            sink as usize,
            a.seed,
            a.tries,
            a.budgets.budget_end,
        )?;
        return Ok(rep);
    }
    let kind = match a.builtin.expect("clap enforces one input") {
        Builtin::P1 => CanonicalKind::P1,
        Builtin::P2 => CanonicalKind::P2,
        Builtin::Q0 => CanonicalKind::Q0,
        Builtin::Q1 => CanonicalKind::Q1,
        Builtin::X2 => {
            let q = find_quasi_length_two(ctx, field, a.c, a.seed, a.tries, a.budgets.budget_end)?;
            return Ok(q.rep);
        }
    };
    Ok(Rep::build_canonical(ctx, field, &kind)?)
}

fn oracle(a: &OracleArgs) -> Result<Outcome> {
    let rep = oracle_input(a)?;
    if let Some(path) = &a.save_rep {
        std::fs::write(path, rep.to_json_string() + "\n")
            .with_context(|| format!("writing {}", path.display()))?;
    }
    let table = run_oracle(&rep, &a.budgets.config())?;
    let cert = table.certificate();
    if a.json {
        return Ok(Outcome::ok(to_json_text(&cert.to_json())));
    }
    let mut out = String::new();
    writeln!(out, "dim\t{}", rep.dim())?;
    writeln!(out, "measure\t{}", cert.measure)?;
    let chain: Vec<String> = cert.chain.iter().map(|u| u.dim().to_string()).collect();
    writeln!(out, "chain\t{}", chain.join(" < "))?;
    let class = cert
        .gr_submodule_class
        .map_or_else(|| "none".to_string(), |c| c.to_string());
    writeln!(out, "gr_submodule\t{class}")?;
    Ok(Outcome::ok(out))
}

fn grid(a: &GridArgs) -> Result<Outcome> {
    if a.n != 3 {
        bail!("the component grid uses Fibonacci closed forms and needs n = 3");
    }
    let g = ComponentGrid::new(&a.dim, a.radius, a.ql_max)?;
    if a.json {
        let cells: Vec<Value> = g
            .cells
            .iter()
            .map(|c| {
                json!({
                    "j": c.quasi_length.to_string(),
                    "t": c.offset.to_string(),
                    "column": c.column.to_string(),
                    "dim": dim_json(&c.dim),
                })
            })
            .collect();
        let v = json!({
            "anchor": dim_json(&g.anchor),
            "radius": a.radius.to_string(),
            "ql_max": a.ql_max.to_string(),
            "cells": cells,
        });
        return Ok(Outcome::ok(to_json_text(&v)));
    }
    let cols = g.columns();
    let mut out = String::from("j");
    for c in &cols {
        write!(out, "\t{c}")?;
    }
    out.push('\n');
    for j in (1..=a.ql_max).rev() {
        write!(out, "{j}")?;
        for &x in &cols {
            let cell = g
                .cells
                .iter()
                .find(|c| c.quasi_length == j && c.column == x);
            match cell {
                Some(c) => write!(out, "\t{}", c.dim)?,
                None => out.push('\t'),
            }
        }
        out.push('\n');
    }
    Ok(Outcome::ok(out))
}

fn verify_cmd(a: &VerifyArgs) -> Result<Outcome> {
    let settings = verify::Settings {
        seed: a.seed,
        oracle: a.budgets.config(),
        ..verify::Settings::default()
    };
    let report = verify::run_suite(a.suite, &settings)?;
    let text = if a.json {
        to_json_text(&serde_json::to_value(&report)?)
    } else {
        report.to_text()
    };
    Ok(Outcome {
        text,
        passed: report.pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k_ranges() {
        assert_eq!(parse_k_range("-2..2"), Ok(-2..=2));
        assert_eq!(parse_k_range("-1"), Ok(-1..=-1));
        assert_eq!(parse_k_range("0..=3"), Ok(0..=3));
        assert!(parse_k_range("3..1").is_err());
        assert!(parse_k_range("x").is_err());
    }

    #[test]
    fn budget_errors_map_to_their_own_code() {
        let e = anyhow::Error::from(RepError::BudgetExceeded {
            what: "x",
            needed: 5,
            budget: 1,
        });
        assert_eq!(exit_code_for(&e), EXIT_BUDGET);
        let e = anyhow::Error::from(RepError::Schema("bad".into()));
        assert_eq!(exit_code_for(&e), EXIT_ERROR);
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run(["kron", "nope"]), EXIT_USAGE);
        assert_eq!(run(["kron", "verify", "--suite", "bogus"]), EXIT_USAGE);
    }

    #[test]
    fn orbit_table() {
        let out = execute(&Command::Orbit(OrbitArgs {
            n: 3,
            dim: DimVec::new(1u32, 1u32),
            k: -2..=2,
            json: false,
        }))
        .unwrap();
        let lines: Vec<&str> = out.text.lines().skip(1).collect();
        assert_eq!(
            lines,
            [
                "-2\t(13,34)",
                "-1\t(2,5)",
                "0\t(1,1)",
                "1\t(5,2)",
                "2\t(34,13)"
            ]
        );
    }
}
