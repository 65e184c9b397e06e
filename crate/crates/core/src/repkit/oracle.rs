//! GR measures computed from the definition.
//!
//! A subrepresentation `U = (U2, U1)` of `R` that is indecomposable and not
//! simple has `U1 = span α(U2)` and `U2 ∩ K = 0`, where `K` is the common
//! kernel of the arrows: otherwise a simple summand splits off. Such a `U`
//! is therefore determined by its source part, and the walk below runs over
//! the subspaces of the source only.
//!
//! For a source subspace `V` let `best(V)` be the measure of the
//! subrepresentation it spans and `E(V)` the largest `best(W)` over
//! indecomposable `W ⊆ V`. Every proper subspace lies in a hyperplane, so
//!
//! ```text
//! best(V) = max( {1}, max_H E(H) ) ∪ {|U|}       (H a hyperplane of V)
//! E(V)    = max( best(V) if U is indecomposable, max_H E(H) )
//! ```
//!
//! where `{1}` stands for a simple sink line inside `U`. Ties keep the first
//! candidate in enumeration order, so certificates are reproducible.

use std::cmp::Ordering;
use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::endo::is_indecomposable;
use super::field::PrimeField;
use super::lattice::enumerate_submodules;
use super::linalg::{subspace_count, subspaces_of_dim, Subspace};
use super::rep::{Rep, SubRep};
use super::RepError;
use crate::dimvec::PositionClass;
use crate::grorder::{compare_sorted, starts_with_sorted, GrMeasure};

/// Budgets for the oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    /// Maximum number of subspaces visited.
    pub lattice_budget: u64,
    /// Maximum size of an endomorphism algebra to enumerate.
    pub end_budget: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            lattice_budget: 1_000_000,
            end_budget: 1 << 20,
        }
    }
}

/// A verified chain of indecomposable subrepresentations realizing `μ(R)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrCertificate {
    pub measure: GrMeasure,
    pub chain: Vec<SubRep>,
    pub lengths: Vec<u64>,
    pub gr_submodule_class: Option<PositionClass>,
}

#[derive(Clone, Debug)]
struct Node {
    source: Subspace,
    sink: Subspace,
    indecomposable: bool,
    best: Option<Vec<u64>>,
    /// Node whose `best` was extended; `None` means a sink line.
    best_from: Option<(usize, usize)>,
    /// `E(V)` and the node realizing it.
    closure: Option<(Vec<u64>, (usize, usize))>,
}

/// Everything the oracle learned about one representation.
#[derive(Clone, Debug)]
pub struct OracleTable {
    rep: Rep,
    levels: Vec<Vec<Node>>,
    measure: Vec<u64>,
}

fn better(a: &[u64], b: &[u64]) -> bool {
    compare_sorted(a, b) == Ordering::Greater
}

fn to_measure(v: &[u64]) -> GrMeasure {
    GrMeasure::from_u64s(v).expect("oracle measures are strictly increasing")
}

/// Runs the oracle on an indecomposable representation.
pub fn run_oracle(rep: &Rep, cfg: &OracleConfig) -> Result<OracleTable, RepError> {
    if !is_indecomposable(rep, cfg.end_budget)? {
        return Err(RepError::NotIndecomposable(rep.dim().to_string()));
    }
    let f = rep.field();
    let a = rep.source_dim();
    let needed = subspace_count(a, f.p() as u64);
    if needed > cfg.lattice_budget as u128 {
        return Err(RepError::BudgetExceeded {
            what: "source subspace walk",
            needed,
            budget: cfg.lattice_budget as u128,
        });
    }
    let kernel = rep.common_kernel();
    let mut levels: Vec<Vec<Node>> = vec![vec![Node {
        source: Subspace::zero(a),
        sink: Subspace::zero(rep.sink_dim()),
        indecomposable: false,
        best: None,
        best_from: None,
        closure: None,
    }]];
    let mut prev_index: HashMap<Vec<u8>, usize> = HashMap::from([(Subspace::zero(a).key(), 0)]);
    for k in 1..=a {
        let prev = &levels[k - 1];
        let nodes: Vec<Node> = subspaces_of_dim(a, k, f)
            .into_par_iter()
            .enumerate()
            .map(|(idx, source)| visit(rep, cfg, &kernel, prev, &prev_index, (k, idx), source))
            .collect::<Result<_, _>>()?;
        prev_index = nodes
            .iter()
            .enumerate()
            .map(|(i, n)| (n.source.key(), i))
            .collect();
        levels.push(nodes);
    }
    let measure = if a == 0 {
        // only (0,1) is indecomposable here
        vec![1]
    } else if rep.sink_dim() == 0 {
        vec![1]
    } else {
        levels[a][0]
            .best
            .clone()
            .expect("an indecomposable non-simple module spans its sink")
    };
    Ok(OracleTable {
        rep: rep.clone(),
        levels,
        measure,
    })
}

fn visit(
    rep: &Rep,
    cfg: &OracleConfig,
    kernel: &Subspace,
    prev: &[Node],
    prev_index: &HashMap<Vec<u8>, usize>,
    at: (usize, usize),
    source: Subspace,
) -> Result<Node, RepError> {
    let k = at.0;
    let f = rep.field();
    let mut sub: Option<(Vec<u64>, (usize, usize))> = None;
    for h in source.hyperplanes(f) {
        let idx = prev_index[&h.key()];
        if let Some((m, from)) = &prev[idx].closure {
            if sub.as_ref().is_none_or(|(cur, _)| better(m, cur)) {
                sub = Some((m.clone(), *from));
            }
        }
    }
    let valid = kernel.dim() == 0 || source.intersect(kernel, f).dim() == 0;
    if !valid {
        return Ok(Node {
            sink: Subspace::zero(rep.sink_dim()),
            source,
            indecomposable: false,
            best: None,
            best_from: None,
            closure: sub,
        });
    }
    let sink = rep.image_of(&source);
    let u = SubRep {
        source: source.clone(),
        sink: sink.clone(),
    };
    let length = (k + sink.dim()) as u64;
    let indecomposable = is_indecomposable(&rep.restrict(&u)?, cfg.end_budget)?;
    let (mut best, best_from) = match &sub {
        Some((m, from)) => (m.clone(), Some(*from)),
        None => (vec![1], None),
    };
    best.push(length);
    let closure = if indecomposable {
        // best(V) ends in |U|, beyond every length below, so it wins
        Some((best.clone(), at))
    } else {
        sub
    };
    Ok(Node {
        source,
        sink,
        indecomposable,
        best: Some(best),
        best_from,
        closure,
    })
}

impl OracleTable {
    pub fn rep(&self) -> &Rep {
        &self.rep
    }

    pub fn measure(&self) -> GrMeasure {
        to_measure(&self.measure)
    }

    fn node(&self, at: (usize, usize)) -> &Node {
        &self.levels[at.0][at.1]
    }

    /// Indecomposable non-simple subrepresentations and their measures.
    pub fn indecomposable_subreps(&self) -> Vec<(SubRep, GrMeasure)> {
        self.levels
            .iter()
            .flatten()
            .filter(|n| n.indecomposable)
            .map(|n| {
                (
                    SubRep {
                        source: n.source.clone(),
                        sink: n.sink.clone(),
                    },
                    to_measure(n.best.as_ref().unwrap()),
                )
            })
            .collect()
    }

    fn top(&self) -> Option<(usize, usize)> {
        let a = self.rep.source_dim();
        (a > 0 && self.rep.sink_dim() > 0).then_some((a, 0))
    }

    /// The chain behind `μ(R)`, bottom first.
    pub fn certificate(&self) -> GrCertificate {
        let f = self.rep.field();
        let mut chain = Vec::new();
        match self.top() {
            None => chain.push(self.rep.whole()),
            Some(top) => {
                let mut cur = top;
                loop {
                    let n = self.node(cur);
                    chain.push(SubRep {
                        source: n.source.clone(),
                        sink: n.sink.clone(),
                    });
                    match n.best_from {
                        Some(from) => cur = from,
                        None => {
                            let line = n.sink.basis()[0].clone();
                            chain.push(SubRep {
                                source: Subspace::zero(self.rep.source_dim()),
                                sink: Subspace::span(self.rep.sink_dim(), &[line], f),
                            });
                            break;
                        }
                    }
                }
                chain.reverse();
            }
        }
        let lengths: Vec<u64> = chain.iter().map(|u| u.length() as u64).collect();
        let gr_submodule_class = if chain.len() >= 2 {
            self.rep
                .ctx()
                .classify_position(&chain[chain.len() - 2].dim())
                .ok()
        } else {
            None
        };
        GrCertificate {
            measure: to_measure(&lengths),
            chain,
            lengths,
            gr_submodule_class,
        }
    }

    /// Every GR submodule: proper indecomposable `U` with
    /// `μ(U) ∪ {|R|} = μ(R)`.
    pub fn gr_submodules(&self) -> Vec<SubRep> {
        let f = self.rep.field();
        let target = &self.measure[..self.measure.len() - 1];
        let mut out = Vec::new();
        if target == [1] {
            for line in subspaces_of_dim(self.rep.sink_dim(), 1, f) {
                out.push(SubRep {
                    source: Subspace::zero(self.rep.source_dim()),
                    sink: line,
                });
            }
            let kernel = self.rep.common_kernel();
            for line in super::linalg::subspaces_within(&kernel, f)
                .into_iter()
                .filter(|s| s.dim() == 1)
            {
                out.push(SubRep {
                    source: line,
                    sink: Subspace::zero(self.rep.sink_dim()),
                });
            }
        }
        for n in self.levels.iter().flatten() {
            if n.indecomposable && n.best.as_ref().is_some_and(|b| b[..] == *target) {
                out.push(SubRep {
                    source: n.source.clone(),
                    sink: n.sink.clone(),
                });
            }
        }
        out
    }
}

/// `μ(R)` together with a witness chain.
pub fn gr_measure_oracle(
    rep: &Rep,
    cfg: &OracleConfig,
) -> Result<(GrMeasure, GrCertificate), RepError> {
    let table = run_oracle(rep, cfg)?;
    Ok((table.measure(), table.certificate()))
}

pub fn gr_submodules(rep: &Rep, cfg: &OracleConfig) -> Result<Vec<SubRep>, RepError> {
    Ok(run_oracle(rep, cfg)?.gr_submodules())
}

/// `true` iff `μ(R)` starts with `μ(U)`.
pub fn is_piling(u: &SubRep, rep: &Rep, cfg: &OracleConfig) -> Result<bool, RepError> {
    let sub = rep.restrict(u)?;
    let mu_u = run_oracle(&sub, cfg)?.measure;
    let mu_r = run_oracle(rep, cfg)?.measure;
    Ok(starts_with_sorted(&mu_r, &mu_u))
}

/// Membership in the class of regular modules all of whose GR submodules
/// are preprojective.
pub fn in_b(rep: &Rep, cfg: &OracleConfig) -> Result<bool, RepError> {
    let position = rep.ctx().classify_position(&rep.dim())?;
    if position != PositionClass::Regular {
        return Err(RepError::InvalidParameters(format!(
            "{} is not a regular dimension vector",
            rep.dim()
        )));
    }
    let ctx = *rep.ctx();
    Ok(gr_submodules(rep, cfg)?.iter().all(|u| {
        matches!(
            ctx.classify_position(&u.dim()),
            Ok(PositionClass::Preprojective(_))
        )
    }))
}

/// Reference implementation for tiny modules: walk every chain of
/// indecomposable subrepresentations in the full lattice.
pub fn naive_measure(rep: &Rep, cfg: &OracleConfig) -> Result<GrMeasure, RepError> {
    if !is_indecomposable(rep, cfg.end_budget)? {
        return Err(RepError::NotIndecomposable(rep.dim().to_string()));
    }
    let lattice = enumerate_submodules(rep, cfg.lattice_budget)?;
    let indec = lattice.indecomposables(rep, cfg.end_budget)?;
    let top = lattice
        .find(&rep.whole())
        .expect("whole module is in the lattice");
    let f = rep.field();
    let nodes = lattice.nodes();
    let mut best: Option<Vec<u64>> = None;
    let mut stack: Vec<(usize, Vec<u64>)> = vec![(top, vec![nodes[top].length() as u64])];
    while let Some((at, lengths_desc)) = stack.pop() {
        let mut asc = lengths_desc.clone();
        asc.reverse();
        if best.as_ref().is_none_or(|b| better(&asc, b)) {
            best = Some(asc);
        }
        for (j, u) in nodes.iter().enumerate() {
            if indec[j] && u.length() < nodes[at].length() && u.is_contained_in(&nodes[at], f) {
                let mut next = lengths_desc.clone();
                next.push(u.length() as u64);
                stack.push((j, next));
            }
        }
    }
    Ok(to_measure(&best.expect("top chain exists")))
}

/// Re-checks a certificate against the representation it came from.
pub fn verify_certificate(
    rep: &Rep,
    cert: &GrCertificate,
    end_budget: u64,
) -> Result<(), RepError> {
    let bad = |msg: &str| Err(RepError::InvalidCertificate(msg.to_string()));
    if cert.chain.is_empty() || cert.chain.len() != cert.lengths.len() {
        return bad("chain and lengths disagree");
    }
    if cert.chain.last() != Some(&rep.whole()) {
        return bad("chain does not end at the module");
    }
    for (i, u) in cert.chain.iter().enumerate() {
        rep.validate_subrep(u)?;
        if u.length() as u64 != cert.lengths[i] {
            return bad("length mismatch");
        }
        if !is_indecomposable(&rep.restrict(u)?, end_budget)? {
            return bad("chain member is decomposable");
        }
        if i > 0 {
            let prev = &cert.chain[i - 1];
            if prev.length() >= u.length() || !prev.is_contained_in(u, rep.field()) {
                return bad("chain is not strictly increasing");
            }
        }
    }
    if cert.measure != to_measure(&cert.lengths) {
        return bad("measure is not the set of lengths");
    }
    Ok(())
}

#[derive(Serialize, Deserialize)]
struct SubRepJson {
    #[serde(rename = "U2")]
    u2: Vec<Vec<u8>>,
    #[serde(rename = "U1")]
    u1: Vec<Vec<u8>>,
}

#[derive(Serialize, Deserialize)]
struct CertificateJson {
    measure: GrMeasure,
    chain: Vec<SubRepJson>,
    lengths: Vec<String>,
    gr_submodule_class: String,
}

impl GrCertificate {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(CertificateJson {
            measure: self.measure.clone(),
            chain: self
                .chain
                .iter()
                .map(|u| SubRepJson {
                    u2: u.source.basis().to_vec(),
                    u1: u.sink.basis().to_vec(),
                })
                .collect(),
            lengths: self.lengths.iter().map(|l| l.to_string()).collect(),
            gr_submodule_class: self
                .gr_submodule_class
                .map_or_else(|| "unknown".to_string(), |c| c.to_string()),
        })
        .expect("certificate serializes")
    }

    /// Reads a certificate back; subspaces are re-canonicalized over `field`.
    pub fn from_json(value: &serde_json::Value, rep: &Rep) -> Result<GrCertificate, RepError> {
        let raw: CertificateJson =
            serde_json::from_value(value.clone()).map_err(|e| RepError::Schema(e.to_string()))?;
        let f: &PrimeField = rep.field();
        let chain = raw
            .chain
            .iter()
            .map(|u| SubRep {
                source: Subspace::span(rep.source_dim(), &u.u2, f),
                sink: Subspace::span(rep.sink_dim(), &u.u1, f),
            })
            .collect();
        let lengths = raw
            .lengths
            .iter()
            .map(|s| {
                s.parse::<u64>()
                    .map_err(|e| RepError::Schema(e.to_string()))
            })
            .collect::<Result<_, _>>()?;
        let gr_submodule_class = match raw.gr_submodule_class.as_str() {
            "unknown" => None,
            "regular" => Some(PositionClass::Regular),
            s => {
                let parse = |t: &str| {
                    t.parse::<u32>()
                        .map_err(|e| RepError::Schema(e.to_string()))
                };
                if let Some(r) = s.strip_prefix("P_") {
                    Some(PositionClass::Preprojective(parse(r)?))
                } else if let Some(r) = s.strip_prefix("Q_") {
                    Some(PositionClass::Preinjective(parse(r)?))
                } else {
                    return Err(RepError::Schema(format!("unknown class {s:?}")));
                }
            }
        };
        Ok(GrCertificate {
            measure: raw.measure,
            chain,
            lengths,
            gr_submodule_class,
        })
    }
}
