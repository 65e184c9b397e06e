//! Closed-form GR measures.
//!
//! Two kinds of modules get a symbolic measure here. The preprojectives
//! `P_r` form the take-off chain, where each `P_r` is a GR submodule of
//! `P_{r+1}`, so `μ(P_r) = {|P_1|, …, |P_r|}`. The other kind is the regular
//! family `τ^{-i}X[j]` with `udim X = (1,c)` and `1 ≤ c ≤ n−1`, addressed by
//! a [`RegularCoord`]. Its GR submodule is
//!
//! * `τ^{-i}X[j-1]` when `j ≥ 2`,
//! * `P_1` when `i = 0, j = 1`,
//! * `P_{2i} = τ^{-(i-1)}P_2` when `c = 1, i ≥ 1, j = 1`,
//! * `P_{2i+1} = τ^{-i}P_1` when `c ≥ 2, j = 1`,
//!
//! and the measure is the submodule's measure extended by the length.
//!
//! Landing measures `μ(Q_r)` have no closed form; only their order is
//! exposed, through [`landing_cmp`].

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::RwLock;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dimvec::{DimError, DimVec, KroneckerContext, PositionClass};
use crate::grorder::{compare, GrMeasure, MeasureError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GrError {
    #[error(transparent)]
    Dim(#[from] DimError),
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error("invalid coordinate {coord}: {reason}")]
    InvalidCoord { coord: RegularCoord, reason: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
}

/// `τ^{-i}X[j]` for an indecomposable `X` of dimension `(1, c)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RegularCoord {
    #[serde(rename = "c")]
    pub sink_dim: u32,
    #[serde(rename = "i")]
    pub tau_shift: u32,
    #[serde(rename = "j")]
    pub quasi_length: u32,
}

impl RegularCoord {
    pub fn new(c: u32, i: u32, j: u32) -> Self {
        RegularCoord {
            sink_dim: c,
            tau_shift: i,
            quasi_length: j,
        }
    }

    fn with_quasi_length(self, j: u32) -> Self {
        RegularCoord {
            quasi_length: j,
            ..self
        }
    }
}

impl fmt::Display for RegularCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(c={}, i={}, j={})",
            self.sink_dim, self.tau_shift, self.quasi_length
        )
    }
}

/// Names a module whose measure the engine knows in closed form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModuleLabel {
    Preprojective(u32),
    Family(RegularCoord),
}

impl fmt::Display for ModuleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleLabel::Preprojective(r) => write!(f, "P_{r}"),
            ModuleLabel::Family(c) => write!(f, "X{c}"),
        }
    }
}

/// The three parts of the GR measure spectrum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Part {
    TakeOff,
    Central,
    Landing,
}

/// Take-off is the preprojectives plus the simple injective `Q_0`, landing is
/// the other preinjectives and everything regular is central.
pub fn part_of(position: PositionClass) -> Part {
    match position {
        PositionClass::Preprojective(_) | PositionClass::Preinjective(0) => Part::TakeOff,
        PositionClass::Preinjective(_) => Part::Landing,
        PositionClass::Regular => Part::Central,
    }
}

/// Order of `μ(Q_r)` against `μ(Q_s)` for `r, s ≥ 1`: the measures decrease
/// along the preinjective sequence.
pub fn landing_cmp(r: u32, s: u32) -> Result<Ordering, GrError> {
    if r == 0 || s == 0 {
        return Err(GrError::Precondition(
            "landing indices start at 1 (Q_0 is take-off)".into(),
        ));
    }
    Ok(s.cmp(&r))
}

/// JSON-facing summary of one family member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrDescriptor {
    pub coord: RegularCoord,
    pub dim: DimVec,
    #[serde(with = "biguint_string")]
    pub length: BigUint,
    pub measure: GrMeasure,
    pub gr_submodule: ModuleLabel,
}

mod biguint_string {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyBounds {
    pub sink_dims: Vec<u32>,
    pub max_shift: u32,
    pub max_quasi_length: u32,
}

/// Which modules [`SymbolicEngine::measure_universe`] enumerates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniverseBounds {
    pub max_preprojective: u32,
    pub families: Option<FamilyBounds>,
}

/// One distinct measure in a universe, with every module that has it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UniverseEntry {
    pub measure: GrMeasure,
    pub labels: Vec<ModuleLabel>,
}

/// Symbolic engine for one quiver; memoizes family measures.
#[derive(Debug)]
pub struct SymbolicEngine {
    ctx: KroneckerContext,
    memo: RwLock<HashMap<RegularCoord, GrMeasure>>,
}

impl SymbolicEngine {
    pub fn new(ctx: KroneckerContext) -> Self {
        SymbolicEngine {
            ctx,
            memo: RwLock::new(HashMap::new()),
        }
    }

    pub fn ctx(&self) -> &KroneckerContext {
        &self.ctx
    }

    fn validate(&self, coord: RegularCoord) -> Result<(), GrError> {
        let n = self.ctx.n();
        let bad = |reason: String| Err(GrError::InvalidCoord { coord, reason });
        if coord.sink_dim == 0 || coord.sink_dim >= n {
            return bad(format!("c must lie in 1..={}", n - 1));
        }
        if coord.quasi_length == 0 {
            return bad("quasi-length starts at 1".into());
        }
        Ok(())
    }

    /// `{|P_1|, …, |P_r|}`.
    pub fn preprojective_measure(&self, r: u32) -> Result<GrMeasure, GrError> {
        if r == 0 {
            return Err(GrError::Precondition("preprojectives start at P_1".into()));
        }
        let lengths = self
            .ctx
            .preprojective_iter()
            .take(r as usize)
            .map(|p| p.length())
            .collect();
        Ok(GrMeasure::new(lengths)?)
    }

    /// `udim τ^{-i}X[j] = Σ_{t=i}^{i+j-1} (1,c)Φ^{-t}`.
    pub fn family_dim(&self, coord: RegularCoord) -> Result<DimVec, GrError> {
        self.validate(coord)?;
        let mut cur = self.ctx.coxeter_apply(
            &DimVec::new(1u32, coord.sink_dim),
            -(coord.tau_shift as i64),
        )?;
        let mut sum = DimVec::default();
        for _ in 0..coord.quasi_length {
            sum = &sum + &cur;
            cur = self.ctx.coxeter_apply(&cur, -1)?;
        }
        Ok(sum)
    }

    pub fn family_gr_submodule(&self, coord: RegularCoord) -> Result<ModuleLabel, GrError> {
        self.validate(coord)?;
        let RegularCoord {
            sink_dim: c,
            tau_shift: i,
            quasi_length: j,
        } = coord;
        Ok(if j >= 2 {
            ModuleLabel::Family(coord.with_quasi_length(j - 1))
        } else if i == 0 {
            ModuleLabel::Preprojective(1)
        } else if c == 1 {
            ModuleLabel::Preprojective(2 * i)
        } else {
            ModuleLabel::Preprojective(2 * i + 1)
        })
    }

    pub fn label_measure(&self, label: ModuleLabel) -> Result<GrMeasure, GrError> {
        match label {
            ModuleLabel::Preprojective(r) => self.preprojective_measure(r),
            ModuleLabel::Family(coord) => self.family_measure(coord),
        }
    }

    pub fn label_dim(&self, label: ModuleLabel) -> Result<DimVec, GrError> {
        match label {
            ModuleLabel::Preprojective(r) => Ok(self.ctx.preprojective_dim(r)?),
            ModuleLabel::Family(coord) => self.family_dim(coord),
        }
    }

    pub fn family_measure(&self, coord: RegularCoord) -> Result<GrMeasure, GrError> {
        self.validate(coord)?;
        if let Some(m) = self.memo.read().expect("memo poisoned").get(&coord) {
            return Ok(m.clone());
        }
        // walk up from j = 1 so deep quasi-lengths never recurse deeply
        let mut measure =
            self.label_measure(self.family_gr_submodule(coord.with_quasi_length(1))?)?;
        for j in 1..=coord.quasi_length {
            let here = coord.with_quasi_length(j);
            let cached = self.memo.read().expect("memo poisoned").get(&here).cloned();
            measure = match cached {
                Some(m) => m,
                None => {
                    let m = measure.extend(self.family_dim(here)?.length())?;
                    self.memo
                        .write()
                        .expect("memo poisoned")
                        .entry(here)
                        .or_insert(m)
                        .clone()
                }
            };
        }
        Ok(measure)
    }

    pub fn descriptor(&self, coord: RegularCoord) -> Result<GrDescriptor, GrError> {
        let dim = self.family_dim(coord)?;
        Ok(GrDescriptor {
            coord,
            length: dim.length(),
            dim,
            measure: self.family_measure(coord)?,
            gr_submodule: self.family_gr_submodule(coord)?,
        })
    }

    /// The direct successor of `μ(τ^{-i}X[j])`, which is `μ(τ^{-i}X[j+1])`.
    pub fn direct_successor(&self, coord: RegularCoord) -> Result<GrMeasure, GrError> {
        self.validate(coord)?;
        self.family_measure(coord.with_quasi_length(coord.quasi_length + 1))
    }

    /// `[μ(τ^{-i}X[1]), …, μ(τ^{-i}X[j_max])]`.
    pub fn segment(&self, c: u32, i: u32, j_max: u32) -> Result<Vec<GrMeasure>, GrError> {
        if j_max == 0 {
            return Err(GrError::Precondition("segment needs j_max ≥ 1".into()));
        }
        (1..=j_max)
            .map(|j| self.family_measure(RegularCoord::new(c, i, j)))
            .collect()
    }

    /// `μ(τ^{-i'}X) < μ(τ^{-i}X)` for `i < i'`.
    pub fn monotone_in_i(&self, c: u32, i: u32, i_prime: u32) -> Result<bool, GrError> {
        if i >= i_prime {
            return Err(GrError::Precondition(format!(
                "need i < i', got {i} and {i_prime}"
            )));
        }
        let lo = self.family_measure(RegularCoord::new(c, i, 1))?;
        let hi = self.family_measure(RegularCoord::new(c, i_prime, 1))?;
        Ok(compare(&hi, &lo) == Ordering::Less)
    }

    /// Every closed-form measure within `bounds`, sorted ascending and
    /// merged by value.
    ///
    /// This is a finite stand-in for the whole module category: a measure
    /// missing from the universe may still exist.
    pub fn measure_universe(&self, bounds: &UniverseBounds) -> Result<Vec<UniverseEntry>, GrError> {
        let mut labels = Vec::new();
        labels.extend((1..=bounds.max_preprojective).map(ModuleLabel::Preprojective));
        if let Some(f) = &bounds.families {
            for &c in &f.sink_dims {
                for i in 0..=f.max_shift {
                    for j in 1..=f.max_quasi_length {
                        labels.push(ModuleLabel::Family(RegularCoord::new(c, i, j)));
                    }
                }
            }
        }
        let mut merged: BTreeMap<GrMeasure, Vec<ModuleLabel>> = BTreeMap::new();
        for label in labels {
            merged
                .entry(self.label_measure(label)?)
                .or_default()
                .push(label);
        }
        Ok(merged
            .into_iter()
            .map(|(measure, labels)| UniverseEntry { measure, labels })
            .collect())
    }
}

/// Entries of a sorted universe lying strictly between `lo` and `hi`.
pub fn strictly_between<'a>(
    universe: &'a [UniverseEntry],
    lo: &GrMeasure,
    hi: &GrMeasure,
) -> Vec<&'a UniverseEntry> {
    universe
        .iter()
        .filter(|e| compare(lo, &e.measure).is_lt() && compare(&e.measure, hi).is_lt())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn engine(n: u32) -> SymbolicEngine {
        SymbolicEngine::new(KroneckerContext::new(n).unwrap())
    }

    fn m(xs: &[u64]) -> GrMeasure {
        GrMeasure::from_u64s(xs).unwrap()
    }

    fn rc(c: u32, i: u32, j: u32) -> RegularCoord {
        RegularCoord::new(c, i, j)
    }

    #[test]
    fn take_off_chain() {
        let e = engine(3);
        assert_eq!(e.preprojective_measure(1).unwrap(), m(&[1]));
        assert_eq!(e.preprojective_measure(2).unwrap(), m(&[1, 4]));
        assert_eq!(e.preprojective_measure(3).unwrap(), m(&[1, 4, 11]));
        for n in 3..=6 {
            let e = engine(n);
            for r in 1..30 {
                let a = e.preprojective_measure(r).unwrap();
                let b = e.preprojective_measure(r + 1).unwrap();
                assert!(a < b);
            }
        }
    }

    #[test]
    fn family_dims() {
        let e = engine(3);
        assert_eq!(e.family_dim(rc(1, 0, 2)).unwrap(), DimVec::new(3u32, 6u32));
        assert_eq!(
            e.family_dim(rc(1, 0, 3)).unwrap(),
            DimVec::new(16u32, 40u32)
        );
        assert_eq!(e.family_dim(rc(1, 1, 1)).unwrap(), DimVec::new(2u32, 5u32));
        assert_eq!(
            e.family_dim(rc(1, 1, 2)).unwrap(),
            DimVec::new(15u32, 39u32)
        );
        assert!(e.family_dim(rc(3, 0, 1)).is_err());
        assert!(e.family_dim(rc(1, 0, 0)).is_err());
    }

    #[test]
    fn gr_submodules() {
        let e = engine(3);
        assert_eq!(
            e.family_gr_submodule(rc(1, 1, 1)).unwrap(),
            ModuleLabel::Preprojective(2)
        );
        assert_eq!(
            e.family_gr_submodule(rc(2, 1, 1)).unwrap(),
            ModuleLabel::Preprojective(3)
        );
        assert_eq!(
            e.family_gr_submodule(rc(1, 0, 1)).unwrap(),
            ModuleLabel::Preprojective(1)
        );
        assert_eq!(
            e.family_gr_submodule(rc(1, 0, 4)).unwrap(),
            ModuleLabel::Family(rc(1, 0, 3))
        );
    }

    #[test]
    fn family_measures() {
        let e = engine(3);
        assert_eq!(e.family_measure(rc(1, 0, 1)).unwrap(), m(&[1, 2]));
        assert_eq!(e.family_measure(rc(1, 1, 1)).unwrap(), m(&[1, 4, 7]));
        assert_eq!(e.family_measure(rc(1, 0, 2)).unwrap(), m(&[1, 2, 9]));
        assert_eq!(e.family_measure(rc(2, 0, 1)).unwrap(), m(&[1, 3]));
        assert_eq!(
            e.family_measure(rc(1, 2, 1)).unwrap(),
            m(&[1, 4, 11, 29, 47])
        );
    }

    #[test]
    fn successors_and_segments() {
        let e = engine(3);
        assert_eq!(e.direct_successor(rc(1, 0, 1)).unwrap(), m(&[1, 2, 9]));
        assert_eq!(e.direct_successor(rc(1, 1, 1)).unwrap(), m(&[1, 4, 7, 54]));
        // |X[2]| for c = 2 is 3 + |(5,13)|
        assert_eq!(e.direct_successor(rc(2, 0, 1)).unwrap(), m(&[1, 3, 21]));
        assert_eq!(
            e.segment(1, 0, 3).unwrap(),
            vec![m(&[1, 2]), m(&[1, 2, 9]), m(&[1, 2, 9, 56])]
        );
        assert_eq!(
            e.segment(1, 1, 2).unwrap(),
            vec![m(&[1, 4, 7]), m(&[1, 4, 7, 54])]
        );
        assert_eq!(e.segment(2, 0, 1).unwrap(), vec![m(&[1, 3])]);
    }

    #[test]
    fn monotone() {
        let e = engine(3);
        assert_eq!(e.monotone_in_i(1, 0, 1), Ok(true));
        assert_eq!(e.monotone_in_i(1, 1, 2), Ok(true));
        assert_eq!(e.monotone_in_i(2, 0, 1), Ok(true));
        assert!(e.monotone_in_i(1, 2, 2).is_err());
        for n in 3..=6 {
            let e = engine(n);
            for c in 1..n {
                for i in 0..8 {
                    assert_eq!(e.monotone_in_i(c, i, i + 1), Ok(true));
                }
            }
        }
    }

    #[test]
    fn universes() {
        let e = engine(3);
        let u = e
            .measure_universe(&UniverseBounds {
                max_preprojective: 3,
                families: Some(FamilyBounds {
                    sink_dims: vec![1],
                    max_shift: 1,
                    max_quasi_length: 2,
                }),
            })
            .unwrap();
        assert_eq!(u.len(), 7);
        let u = e
            .measure_universe(&UniverseBounds {
                max_preprojective: 1,
                families: None,
            })
            .unwrap();
        assert_eq!(u.len(), 1);
        assert_eq!(u[0].measure, m(&[1]));
        assert_eq!(u[0].labels, vec![ModuleLabel::Preprojective(1)]);

        let u = engine(4)
            .measure_universe(&UniverseBounds {
                max_preprojective: 2,
                families: Some(FamilyBounds {
                    sink_dims: vec![1, 2, 3],
                    max_shift: 0,
                    max_quasi_length: 1,
                }),
            })
            .unwrap();
        let got: Vec<GrMeasure> = u.into_iter().map(|e| e.measure).collect();
        assert_eq!(
            got,
            vec![m(&[1]), m(&[1, 5]), m(&[1, 4]), m(&[1, 3]), m(&[1, 2])]
        );
    }

    #[test]
    fn chain_law_and_disjointness() {
        let e = engine(3);
        for c in 1..=2 {
            for i in 0..=3 {
                for j in 1..=6 {
                    let here = e.family_measure(rc(c, i, j)).unwrap();
                    let next = e.family_measure(rc(c, i, j + 1)).unwrap();
                    let len = e.family_dim(rc(c, i, j + 1)).unwrap().length();
                    assert_eq!(next, here.extend(len).unwrap());
                    for i2 in 0..=3 {
                        if i2 == i {
                            continue;
                        }
                        for j2 in 1..=6 {
                            assert_ne!(here, e.family_measure(rc(c, i2, j2)).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn central_above_take_off() {
        for n in 3..=5 {
            let e = engine(n);
            let take_off: Vec<_> = (1..=30)
                .map(|r| e.preprojective_measure(r).unwrap())
                .collect();
            for c in 1..n {
                for i in 0..=3 {
                    for j in 1..=5 {
                        let f = e.family_measure(rc(c, i, j)).unwrap();
                        assert!(take_off.iter().all(|t| *t < f), "n={n} {}", rc(c, i, j));
                    }
                }
            }
        }
    }

    #[test]
    fn partition_helpers() {
        assert_eq!(part_of(PositionClass::Preprojective(4)), Part::TakeOff);
        assert_eq!(part_of(PositionClass::Preinjective(0)), Part::TakeOff);
        assert_eq!(part_of(PositionClass::Preinjective(2)), Part::Landing);
        assert_eq!(part_of(PositionClass::Regular), Part::Central);
        assert_eq!(landing_cmp(2, 1), Ok(Ordering::Less));
        assert_eq!(landing_cmp(3, 3), Ok(Ordering::Equal));
        assert!(landing_cmp(0, 1).is_err());
    }

    #[test]
    fn descriptor_json() {
        let e = engine(3);
        let d = e.descriptor(rc(1, 1, 1)).unwrap();
        let v: serde_json::Value = serde_json::to_value(&d).unwrap();
        assert_eq!(v["coord"], serde_json::json!({"c": 1, "i": 1, "j": 1}));
        assert_eq!(v["dim"], serde_json::json!(["2", "5"]));
        assert_eq!(v["length"], serde_json::json!("7"));
        assert_eq!(v["measure"], serde_json::json!(["1", "4", "7"]));
        assert_eq!(v["gr_submodule"], serde_json::json!({"preprojective": 2}));
    }

    #[test]
    fn memo_is_consistent_across_threads() {
        let e = engine(3);
        let coords: Vec<_> = (1..=2)
            .flat_map(|c| (0..4).flat_map(move |i| (1..6).map(move |j| rc(c, i, j))))
            .collect();
        let fresh: Vec<_> = coords
            .iter()
            .map(|&c| engine(3).family_measure(c).unwrap())
            .collect();
        std::thread::scope(|s| {
            for _ in 0..4 {
                s.spawn(|| {
                    for (c, want) in coords.iter().rev().zip(fresh.iter().rev()) {
                        assert_eq!(&e.family_measure(*c).unwrap(), want);
                    }
                });
            }
        });
    }
}
