//! Explicit representations and subrepresentations.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::field::PrimeField;
use super::linalg::{Matrix, Subspace};
use super::RepError;
use crate::dimvec::{DimVec, KroneckerContext};

/// A representation over `F_p`: `maps[i]` is the `sink × source` matrix of
/// the `i`-th arrow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rep {
    ctx: KroneckerContext,
    field: PrimeField,
    source_dim: usize,
    sink_dim: usize,
    maps: Vec<Matrix>,
}

/// Built-in small representations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CanonicalKind {
    /// Simple projective `(0,1)`.
    P1,
    /// `(1,n)`, arrow `i` sending the source vector to `e_i`.
    P2,
    /// Simple injective `(1,0)`.
    Q0,
    /// `(n,1)`, arrow `i` reading coordinate `i`.
    Q1,
    /// `(1,c)` with arrow `i` sending the source vector to `columns[i]`.
    OneC { columns: Vec<Vec<u8>> },
}

/// `U2 ⊆ F^a` at the source and `U1 ⊆ F^b` at the sink with `α_i(U2) ⊆ U1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubRep {
    pub source: Subspace,
    pub sink: Subspace,
}

impl SubRep {
    pub fn length(&self) -> usize {
        self.source.dim() + self.sink.dim()
    }

    pub fn dim(&self) -> DimVec {
        DimVec::new(self.source.dim() as u64, self.sink.dim() as u64)
    }

    pub fn is_contained_in(&self, other: &SubRep, f: &PrimeField) -> bool {
        self.source.is_subspace_of(&other.source, f) && self.sink.is_subspace_of(&other.sink, f)
    }

    pub fn key(&self) -> (Vec<u8>, Vec<u8>) {
        (self.source.key(), self.sink.key())
    }
}

#[derive(Serialize, Deserialize)]
struct RepJson {
    n: u32,
    p: u32,
    dim: [usize; 2],
    mats: Vec<Vec<u32>>,
}

impl Rep {
    /// Validated constructor; `maps` must be `n` matrices of shape `b × a`.
    pub fn new(
        ctx: KroneckerContext,
        field: PrimeField,
        source_dim: usize,
        sink_dim: usize,
        maps: Vec<Matrix>,
    ) -> Result<Self, RepError> {
        if maps.len() != ctx.n() as usize {
            return Err(RepError::Shape(format!(
                "expected {} matrices, got {}",
                ctx.n(),
                maps.len()
            )));
        }
        for (i, m) in maps.iter().enumerate() {
            if m.rows() != sink_dim || m.cols() != source_dim {
                return Err(RepError::Shape(format!(
                    "matrix {i} is {}×{}, expected {sink_dim}×{source_dim}",
                    m.rows(),
                    m.cols()
                )));
            }
            if m.data().iter().any(|&x| x >= field.p()) {
                return Err(RepError::EntryRange(field.p() as u32));
            }
        }
        Ok(Rep {
            ctx,
            field,
            source_dim,
            sink_dim,
            maps,
        })
    }

    pub fn ctx(&self) -> &KroneckerContext {
        &self.ctx
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn sink_dim(&self) -> usize {
        self.sink_dim
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn dim(&self) -> DimVec {
        DimVec::new(self.source_dim as u64, self.sink_dim as u64)
    }

    pub fn length(&self) -> usize {
        self.source_dim + self.sink_dim
    }

    pub fn build_canonical(
        ctx: KroneckerContext,
        field: PrimeField,
        kind: &CanonicalKind,
    ) -> Result<Rep, RepError> {
        let n = ctx.n() as usize;
        let unit = |len: usize, i: usize| {
            let mut v = vec![0u8; len];
            v[i] = 1;
            v
        };
        let (a, b, maps) = match kind {
            CanonicalKind::P1 => (0, 1, vec![Matrix::zeros(1, 0); n]),
            CanonicalKind::Q0 => (1, 0, vec![Matrix::zeros(0, 1); n]),
            CanonicalKind::P2 => (
                1,
                n,
                (0..n).map(|i| Matrix::from_vec(n, 1, unit(n, i))).collect(),
            ),
            CanonicalKind::Q1 => (
                n,
                1,
                (0..n).map(|i| Matrix::from_vec(1, n, unit(n, i))).collect(),
            ),
            CanonicalKind::OneC { columns } => {
                if columns.len() != n {
                    return Err(RepError::InvalidParameters(format!(
                        "need {n} columns, got {}",
                        columns.len()
                    )));
                }
                let c = columns[0].len();
                if c == 0 || columns.iter().any(|col| col.len() != c) {
                    return Err(RepError::InvalidParameters(
                        "columns must share a positive length".into(),
                    ));
                }
                let maps = columns
                    .iter()
                    .map(|col| Matrix::from_vec(c, 1, col.clone()))
                    .collect();
                (1, c, maps)
            }
        };
        Rep::new(ctx, field, a, b, maps)
    }

    /// Uniformly random entries from a ChaCha8 stream seeded with `seed`.
    pub fn random(
        ctx: KroneckerContext,
        field: PrimeField,
        source_dim: usize,
        sink_dim: usize,
        seed: u64,
    ) -> Rep {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Rep::random_with(ctx, field, source_dim, sink_dim, &mut rng)
    }

    pub fn random_with(
        ctx: KroneckerContext,
        field: PrimeField,
        source_dim: usize,
        sink_dim: usize,
        rng: &mut ChaCha8Rng,
    ) -> Rep {
        let p = field.p();
        let maps = (0..ctx.n())
            .map(|_| {
                let data = (0..source_dim * sink_dim)
                    .map(|_| rng.gen_range(0..p))
                    .collect();
                Matrix::from_vec(sink_dim, source_dim, data)
            })
            .collect();
        Rep {
            ctx,
            field,
            source_dim,
            sink_dim,
            maps,
        }
    }

    pub fn direct_sum(&self, other: &Rep) -> Result<Rep, RepError> {
        if self.ctx != other.ctx || self.field != other.field {
            return Err(RepError::InvalidParameters(
                "direct sum of reps over different quivers or fields".into(),
            ));
        }
        let (a, b) = (
            self.source_dim + other.source_dim,
            self.sink_dim + other.sink_dim,
        );
        let maps = self
            .maps
            .iter()
            .zip(&other.maps)
            .map(|(x, y)| {
                let mut m = Matrix::zeros(b, a);
                for r in 0..x.rows() {
                    for c in 0..x.cols() {
                        m.set(r, c, x.get(r, c));
                    }
                }
                for r in 0..y.rows() {
                    for c in 0..y.cols() {
                        m.set(x.rows() + r, x.cols() + c, y.get(r, c));
                    }
                }
                m
            })
            .collect();
        Rep::new(self.ctx, self.field.clone(), a, b, maps)
    }

    /// `α_i v` for every arrow.
    pub fn images(&self, v: &[u8]) -> Vec<Vec<u8>> {
        self.maps.iter().map(|m| m.apply(v, &self.field)).collect()
    }

    /// `span{α_i(u) : u ∈ U2, all i}`.
    pub fn image_of(&self, source: &Subspace) -> Subspace {
        let vectors: Vec<Vec<u8>> = source.basis().iter().flat_map(|u| self.images(u)).collect();
        Subspace::span(self.sink_dim, &vectors, &self.field)
    }

    /// `∩_i α_i⁻¹(U1)`, the largest source subspace mapping into `U1`.
    pub fn preimage(&self, sink: &Subspace) -> Subspace {
        if self.source_dim == 0 {
            return Subspace::zero(0);
        }
        let q = sink.quotient_map(&self.field);
        let mut stacked = Matrix::zeros(0, self.source_dim);
        for m in &self.maps {
            stacked = stacked.vstack(&q.mul(m, &self.field));
        }
        Subspace::span(
            self.source_dim,
            &stacked.nullspace(&self.field),
            &self.field,
        )
    }

    /// Common kernel of all arrows.
    pub fn common_kernel(&self) -> Subspace {
        self.preimage(&Subspace::zero(self.sink_dim))
    }

    pub fn whole(&self) -> SubRep {
        SubRep {
            source: Subspace::full(self.source_dim),
            sink: Subspace::full(self.sink_dim),
        }
    }

    pub fn validate_subrep(&self, u: &SubRep) -> Result<(), RepError> {
        if u.source.ambient() != self.source_dim || u.sink.ambient() != self.sink_dim {
            return Err(RepError::InvalidSubRep("ambient dimensions differ".into()));
        }
        let closed = u.source.basis().iter().all(|v| {
            self.images(v)
                .iter()
                .all(|w| u.sink.contains(w, &self.field))
        });
        if !closed {
            return Err(RepError::InvalidSubRep(
                "not closed under the arrows".into(),
            ));
        }
        Ok(())
    }

    /// The subrepresentation `U` as a representation in its own right, in
    /// the canonical bases of `U2` and `U1`.
    pub fn restrict(&self, u: &SubRep) -> Result<Rep, RepError> {
        self.validate_subrep(u)?;
        let (k2, k1) = (u.source.dim(), u.sink.dim());
        let maps = self
            .maps
            .iter()
            .map(|m| {
                let mut out = Matrix::zeros(k1, k2);
                for (c, v) in u.source.basis().iter().enumerate() {
                    let img = m.apply(v, &self.field);
                    for (r, x) in u.sink.coords(&img).into_iter().enumerate() {
                        out.set(r, c, x);
                    }
                }
                out
            })
            .collect();
        Rep::new(self.ctx, self.field.clone(), k2, k1, maps)
    }

    /// `R / U`, with quotient bases indexed by the free columns of `U2`, `U1`.
    pub fn quotient(&self, u: &SubRep) -> Result<Rep, RepError> {
        self.validate_subrep(u)?;
        let free_src = u.source.free_columns();
        let q_sink = u.sink.quotient_map(&self.field);
        let maps = self
            .maps
            .iter()
            .map(|m| {
                let mut out = Matrix::zeros(q_sink.rows(), free_src.len());
                for (c, &col) in free_src.iter().enumerate() {
                    let mut e = vec![0u8; self.source_dim];
                    e[col] = 1;
                    let img = q_sink.apply(&m.apply(&e, &self.field), &self.field);
                    for (r, x) in img.into_iter().enumerate() {
                        out.set(r, c, x);
                    }
                }
                out
            })
            .collect();
        Rep::new(
            self.ctx,
            self.field.clone(),
            free_src.len(),
            q_sink.rows(),
            maps,
        )
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(RepJson {
            n: self.ctx.n(),
            p: self.field.p() as u32,
            dim: [self.source_dim, self.sink_dim],
            mats: self
                .maps
                .iter()
                .map(|m| m.data().iter().map(|&x| x as u32).collect())
                .collect(),
        })
        .expect("rep serializes")
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("rep serializes")
    }

    pub fn from_json_str(s: &str) -> Result<Rep, RepError> {
        let raw: RepJson = serde_json::from_str(s).map_err(|e| RepError::Schema(e.to_string()))?;
        let ctx = KroneckerContext::new(raw.n)?;
        let field = PrimeField::new(raw.p)?;
        let [a, b] = raw.dim;
        let maps = raw
            .mats
            .into_iter()
            .enumerate()
            .map(|(i, m)| {
                if m.len() != a * b {
                    return Err(RepError::Shape(format!(
                        "matrix {i} has {} entries, expected {}",
                        m.len(),
                        a * b
                    )));
                }
                if m.iter().any(|&x| x >= raw.p) {
                    return Err(RepError::EntryRange(raw.p));
                }
                Ok(Matrix::from_vec(
                    b,
                    a,
                    m.into_iter().map(|x| x as u8).collect(),
                ))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Rep::new(ctx, field, a, b, maps)
    }
}
