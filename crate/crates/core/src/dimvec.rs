//! Dimension-vector arithmetic for the n-Kronecker quiver.
//!
//! Convention: a dimension vector is the row vector `(a, b)` with `a` the
//! dimension at the source and `b` at the sink, and the Coxeter matrix acts
//! on the right. With this choice `τ` corresponds to `v ↦ vΦ` where
//!
//! ```text
//! Φ    = [[n²-1,  n], [-n, -1]]
//! Φ⁻¹  = [[-1,   -n], [ n, n²-1]]
//! ```
//!
//! so `(1,1)Φ⁻¹ = (2,5)` for `n = 3`.
//!
//! Roots: `q(v) = 1` is real, `q(v) < 0` is imaginary. For `n ≥ 3` no
//! nonzero integer vector has `q = 0` (the isotropic slopes
//! `(n ± √(n²-4))/2` are irrational), so the strict and non-strict
//! conventions for imaginary roots agree.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DimError {
    #[error("the quiver needs at least 3 arrows, got n = {0}")]
    TooFewArrows(u32),
    #[error("τ^{k} is undefined on {start}: the orbit leaves the positive cone")]
    OrbitEscape { start: String, k: i64 },
    #[error("zero dimension vector")]
    ZeroVector,
    #[error("{0} is not a root")]
    NotARoot(String),
    #[error("real root {0} matches neither the preprojective nor the preinjective sequence")]
    InternalContradiction(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("index out of range: {0}")]
    BadIndex(String),
    #[error("malformed dimension vector {0:?}")]
    Parse(String),
}

/// The arrow count of the quiver, with `n ≥ 3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KroneckerContext {
    n: u32,
}

/// A dimension vector `(a, b)`: `source` at the source vertex, `sink` at the sink.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct DimVec {
    pub source: BigUint,
    pub sink: BigUint,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RootKind {
    Real,
    Imaginary,
    NotRoot,
}

/// Position of an indecomposable of the given dimension in the AR quiver.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PositionClass {
    Preprojective(u32),
    Preinjective(u32),
    Regular,
}

impl fmt::Display for PositionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PositionClass::Preprojective(r) => write!(f, "P_{r}"),
            PositionClass::Preinjective(r) => write!(f, "Q_{r}"),
            PositionClass::Regular => f.write_str("regular"),
        }
    }
}

impl fmt::Display for RootKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RootKind::Real => "real",
            RootKind::Imaginary => "imaginary",
            RootKind::NotRoot => "not a root",
        })
    }
}

impl DimVec {
    pub fn new(source: impl Into<BigUint>, sink: impl Into<BigUint>) -> Self {
        DimVec {
            source: source.into(),
            sink: sink.into(),
        }
    }

    /// Total dimension `a + b`.
    pub fn length(&self) -> BigUint {
        &self.source + &self.sink
    }

    pub fn is_zero(&self) -> bool {
        self.source.is_zero() && self.sink.is_zero()
    }

    pub fn to_signed(&self) -> (BigInt, BigInt) {
        (
            BigInt::from(self.source.clone()),
            BigInt::from(self.sink.clone()),
        )
    }

    /// Back from signed coordinates; `None` if either entry is negative.
    pub fn from_signed(a: &BigInt, b: &BigInt) -> Option<Self> {
        Some(DimVec {
            source: a.to_biguint()?,
            sink: b.to_biguint()?,
        })
    }

    /// Both entries as `u64`, when they fit.
    pub fn to_u64s(&self) -> Option<(u64, u64)> {
        Some((self.source.to_u64()?, self.sink.to_u64()?))
    }

    /// Componentwise strict inequality.
    pub fn strictly_below(&self, other: &DimVec) -> bool {
        self.source < other.source && self.sink < other.sink
    }

    pub fn parse_pair(s: &str) -> Result<Self, DimError> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let mut parts = t.split(',').map(str::trim);
        let (Some(a), Some(b), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(DimError::Parse(s.to_string()));
        };
        let a = a
            .parse::<BigUint>()
            .map_err(|_| DimError::Parse(s.to_string()))?;
        let b = b
            .parse::<BigUint>()
            .map_err(|_| DimError::Parse(s.to_string()))?;
        Ok(DimVec::new(a, b))
    }
}

impl std::ops::Add for &DimVec {
    type Output = DimVec;
    fn add(self, rhs: &DimVec) -> DimVec {
        DimVec {
            source: &self.source + &rhs.source,
            sink: &self.sink + &rhs.sink,
        }
    }
}

impl fmt::Display for DimVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.source, self.sink)
    }
}

impl Serialize for DimVec {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        [self.source.to_string(), self.sink.to_string()].serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DimVec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let [a, b] = <[String; 2]>::deserialize(deserializer)?;
        let parse = |s: &str| {
            if s.is_empty() || !s.bytes().all(|c| c.is_ascii_digit()) {
                return Err(serde::de::Error::custom(format!(
                    "not a decimal string: {s:?}"
                )));
            }
            s.parse::<BigUint>().map_err(serde::de::Error::custom)
        };
        Ok(DimVec::new(parse(&a)?, parse(&b)?))
    }
}

/// One step `v ↦ vΦ` (forward) or `v ↦ vΦ⁻¹` (backward), on signed entries.
fn step(n: &BigInt, a: &BigInt, b: &BigInt, forward: bool) -> (BigInt, BigInt) {
    let nn1 = n * n - 1;
    if forward {
        (&nn1 * a - n * b, n * a - b)
    } else {
        (n * b - a, &nn1 * b - n * a)
    }
}

impl KroneckerContext {
    pub fn new(n: u32) -> Result<Self, DimError> {
        if n < 3 {
            return Err(DimError::TooFewArrows(n));
        }
        Ok(KroneckerContext { n })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    fn n_big(&self) -> BigInt {
        BigInt::from(self.n)
    }

    /// `Φ` as a 2×2 integer matrix.
    pub fn coxeter_matrix(&self) -> [[BigInt; 2]; 2] {
        let n = self.n_big();
        [[&n * &n - 1, n.clone()], [-n, BigInt::from(-1)]]
    }

    pub fn inverse_coxeter_matrix(&self) -> [[BigInt; 2]; 2] {
        let n = self.n_big();
        [[BigInt::from(-1), -n.clone()], [n.clone(), &n * &n - 1]]
    }

    /// `vΦ^k` with no positivity checks.
    pub fn coxeter_image(&self, v: (BigInt, BigInt), k: i64) -> (BigInt, BigInt) {
        let n = self.n_big();
        let (mut a, mut b) = v;
        for _ in 0..k.unsigned_abs() {
            (a, b) = step(&n, &a, &b, k > 0);
        }
        (a, b)
    }

    /// `vΦ^k`, i.e. the dimension vector of `τ^k M` when `udim M = v`.
    ///
    /// Fails with `OrbitEscape` as soon as an intermediate vector has a
    /// negative entry or vanishes, which is where `τ` or `τ⁻¹` stops being
    /// defined on the orbit.
    pub fn coxeter_apply(&self, v: &DimVec, k: i64) -> Result<DimVec, DimError> {
        let n = self.n_big();
        let (mut a, mut b) = v.to_signed();
        for _ in 0..k.unsigned_abs() {
            (a, b) = step(&n, &a, &b, k > 0);
            if a.is_negative() || b.is_negative() || (a.is_zero() && b.is_zero()) {
                return Err(DimError::OrbitEscape {
                    start: v.to_string(),
                    k,
                });
            }
        }
        Ok(DimVec::from_signed(&a, &b).expect("entries checked non-negative"))
    }

    /// `q(x) = x₁² + x₂² − n·x₁x₂`.
    pub fn quadratic_form(&self, v: &DimVec) -> BigInt {
        let (a, b) = v.to_signed();
        self.quadratic_form_signed(&a, &b)
    }

    pub fn quadratic_form_signed(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * a + b * b - self.n_big() * a * b
    }

    /// `⟨x, y⟩ = x₁y₁ + x₂y₂ − n·x₁y₂`, which equals
    /// `dim Hom(X,Y) − dim Ext¹(X,Y)`.
    pub fn euler_form(&self, x: &DimVec, y: &DimVec) -> BigInt {
        let (x1, x2) = x.to_signed();
        let (y1, y2) = y.to_signed();
        &x1 * &y1 + &x2 * &y2 - self.n_big() * &x1 * &y2
    }

    pub fn classify_root(&self, v: &DimVec) -> Result<RootKind, DimError> {
        if v.is_zero() {
            return Err(DimError::ZeroVector);
        }
        let q = self.quadratic_form(v);
        Ok(if q.is_one() {
            RootKind::Real
        } else if q.is_negative() {
            RootKind::Imaginary
        } else {
            RootKind::NotRoot
        })
    }

    /// `udim P_r`, with `P_1 = (0,1)`, `P_2 = (1,n)` and `P_{r+2} = P_rΦ⁻¹`.
    pub fn preprojective_dim(&self, r: u32) -> Result<DimVec, DimError> {
        if r == 0 {
            return Err(DimError::BadIndex("preprojectives start at P_1".into()));
        }
        Ok(self.preprojective_iter().nth(r as usize - 1).unwrap())
    }

    /// `udim Q_r`, with `Q_0 = (1,0)`, `Q_1 = (n,1)` and `Q_{r+2} = Q_rΦ`.
    pub fn preinjective_dim(&self, r: u32) -> Result<DimVec, DimError> {
        Ok(self.preinjective_iter().nth(r as usize).unwrap())
    }

    /// `P_1, P_2, …`. Consecutive terms are related by `(a,b) ↦ (b, nb−a)`.
    pub fn preprojective_iter(&self) -> impl Iterator<Item = DimVec> {
        let n = BigUint::from(self.n);
        std::iter::successors(Some(DimVec::new(0u32, 1u32)), move |v| {
            Some(DimVec::new(v.sink.clone(), &n * &v.sink - &v.source))
        })
    }

    /// `Q_0, Q_1, …`, the mirror image of the preprojective sequence.
    pub fn preinjective_iter(&self) -> impl Iterator<Item = DimVec> {
        let n = BigUint::from(self.n);
        std::iter::successors(Some(DimVec::new(1u32, 0u32)), move |v| {
            Some(DimVec::new(&n * &v.source - &v.sink, v.source.clone()))
        })
    }

    /// Locates `v` among preprojectives, preinjectives or regulars.
    pub fn classify_position(&self, v: &DimVec) -> Result<PositionClass, DimError> {
        match self.classify_root(v)? {
            RootKind::NotRoot => Err(DimError::NotARoot(v.to_string())),
            RootKind::Imaginary => Ok(PositionClass::Regular),
            RootKind::Real => {
                let len = v.length();
                for (r, p) in self.preprojective_iter().enumerate() {
                    if p.length() > len {
                        break;
                    }
                    if p == *v {
                        return Ok(PositionClass::Preprojective(r as u32 + 1));
                    }
                }
                for (r, q) in self.preinjective_iter().enumerate() {
                    if q.length() > len {
                        break;
                    }
                    if q == *v {
                        return Ok(PositionClass::Preinjective(r as u32));
                    }
                }
                Err(DimError::InternalContradiction(v.to_string()))
            }
        }
    }

    /// Checks `Σ_{i=0}^{r} τ^{-i}x₀ < τ^{-(r+1)}x₀` componentwise, for `a ≤ b`.
    pub fn orbit_sum_check(&self, x0: &DimVec, r: u32) -> Result<bool, DimError> {
        if x0.is_zero() {
            return Err(DimError::ZeroVector);
        }
        if x0.source > x0.sink {
            return Err(DimError::Precondition(format!(
                "orbit sum needs a ≤ b, got {x0}"
            )));
        }
        let mut sum = DimVec::default();
        let mut cur = x0.clone();
        for _ in 0..=r {
            sum = &sum + &cur;
            cur = self.coxeter_apply(&cur, -1)?;
        }
        Ok(sum.strictly_below(&cur))
    }

    /// `b + q(a,b) / ((n+1)a − b)`, a lower bound for the sink dimension of
    /// an equal-length regular `Y` with `Hom(X,Y) = 0`.
    pub fn hom_bound_second_coord(&self, x: &DimVec) -> Result<BigRational, DimError> {
        let (a, b) = x.to_signed();
        let denom = BigInt::from(self.n + 1) * &a - &b;
        if !denom.is_positive() {
            return Err(DimError::Precondition(format!(
                "(n+1)a − b must be positive, got {denom} for {x}"
            )));
        }
        Ok(BigRational::from_integer(b) + BigRational::new(self.quadratic_form(x), denom))
    }

    /// `true` iff no `(a−t, b+t)` with `1 ≤ t ≤ a−1` is an imaginary root.
    ///
    /// Along the window `q(a−t, b+t) = q(a,b) + (n+2)t(b−a) + (n+2)t²`, a
    /// convex quadratic in `t`, so only the integers next to its vertex
    /// `(a−b)/2` (clamped to the window) need checking.
    pub fn root_window_check(&self, v: &DimVec) -> bool {
        if v.source <= BigUint::one() {
            return true;
        }
        let (a, b) = v.to_signed();
        let lo = BigInt::one();
        let hi: BigInt = &a - 1;
        let clamp = |t: BigInt| t.max(lo.clone()).min(hi.clone());
        let (fl, _) = (&a - &b).div_mod_floor(&BigInt::from(2));
        let candidates = [clamp(fl.clone()), clamp(fl + 1)];
        candidates.iter().all(|t| {
            let q = self.quadratic_form_signed(&(&a - t), &(&b + t));
            !q.is_negative()
        })
    }
}

impl fmt::Display for KroneckerContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K_{}", self.n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ctx(n: u32) -> KroneckerContext {
        KroneckerContext::new(n).unwrap()
    }

    fn d(a: u64, b: u64) -> DimVec {
        DimVec::new(a, b)
    }

    fn mat_mul(x: &[[BigInt; 2]; 2], y: &[[BigInt; 2]; 2]) -> [[BigInt; 2]; 2] {
        let e = |i: usize, j: usize| &x[i][0] * &y[0][j] + &x[i][1] * &y[1][j];
        [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
    }

    #[test]
    fn rejects_small_n() {
        assert_eq!(KroneckerContext::new(2), Err(DimError::TooFewArrows(2)));
        assert!(KroneckerContext::new(3).is_ok());
    }

    #[test]
    fn coxeter_examples() {
        let k3 = ctx(3);
        assert_eq!(k3.coxeter_apply(&d(1, 1), -1).unwrap(), d(2, 5));
        assert_eq!(k3.coxeter_apply(&d(1, 1), 1).unwrap(), d(5, 2));
        assert_eq!(k3.coxeter_apply(&d(7, 3), 0).unwrap(), d(7, 3));
        assert_eq!(k3.coxeter_apply(&d(1, 1), -2).unwrap(), d(13, 34));
        for n in 3..9u64 {
            for c in 1..n {
                let got = ctx(n as u32).coxeter_apply(&d(1, c), -1).unwrap();
                assert_eq!(got, d(n * c - 1, (n * n - 1) * c - n));
            }
        }
        assert_eq!(ctx(4).coxeter_apply(&d(1, 1), -1).unwrap(), d(3, 11));
    }

    #[test]
    fn orbit_escape() {
        let k3 = ctx(3);
        assert!(matches!(
            k3.coxeter_apply(&d(0, 1), 1),
            Err(DimError::OrbitEscape { .. })
        ));
        assert!(matches!(
            k3.coxeter_apply(&d(1, 0), -1),
            Err(DimError::OrbitEscape { .. })
        ));
        // τP_3 = P_1, and τ²P_3 does not exist
        assert_eq!(k3.coxeter_apply(&d(3, 8), 1).unwrap(), d(0, 1));
        assert!(k3.coxeter_apply(&d(3, 8), 2).is_err());
        assert_eq!(k3.coxeter_apply(&d(0, 1), -1).unwrap(), d(3, 8));
    }

    #[test]
    fn forms() {
        let k3 = ctx(3);
        assert_eq!(k3.quadratic_form(&d(1, 0)), BigInt::from(1));
        assert_eq!(k3.quadratic_form(&d(1, 1)), BigInt::from(-1));
        assert_eq!(k3.quadratic_form(&d(2, 5)), BigInt::from(-1));
        assert_eq!(k3.euler_form(&d(0, 1), &d(1, 3)), BigInt::from(3));
        assert_eq!(k3.euler_form(&d(1, 2), &d(2, 5)), BigInt::from(-3));
        assert_eq!(
            k3.euler_form(&d(4, 9), &d(4, 9)),
            k3.quadratic_form(&d(4, 9))
        );
    }

    #[test]
    fn root_kinds() {
        let k3 = ctx(3);
        assert_eq!(k3.classify_root(&d(1, 1)), Ok(RootKind::Imaginary));
        assert_eq!(k3.classify_root(&d(1, 3)), Ok(RootKind::Real));
        assert_eq!(k3.classify_root(&d(2, 0)), Ok(RootKind::NotRoot));
        assert_eq!(k3.classify_root(&d(0, 0)), Err(DimError::ZeroVector));
    }

    #[test]
    fn no_isotropic_vectors() {
        for n in 3..8 {
            let k = ctx(n);
            for a in 0..60u64 {
                for b in 0..60u64 {
                    if a + b > 0 {
                        assert!(!k.quadratic_form(&d(a, b)).is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn preprojective_and_preinjective_figures() {
        for n in 3..=8u64 {
            let k = ctx(n as u32);
            let p = [
                d(0, 1),
                d(1, n),
                d(n, n * n - 1),
                d(n * n - 1, n * n * n - 2 * n),
            ];
            let q = [
                d(1, 0),
                d(n, 1),
                d(n * n - 1, n),
                d(n * n * n - 2 * n, n * n - 1),
            ];
            for r in 0..4 {
                assert_eq!(k.preprojective_dim(r as u32 + 1).unwrap(), p[r]);
                assert_eq!(k.preinjective_dim(r as u32).unwrap(), q[r]);
            }
            // the recursion through Φ^{∓1}
            for r in 1..12 {
                let pr = k.preprojective_dim(r).unwrap();
                assert_eq!(
                    k.coxeter_apply(&pr, -1).unwrap(),
                    k.preprojective_dim(r + 2).unwrap()
                );
                let qr = k.preinjective_dim(r - 1).unwrap();
                assert_eq!(
                    k.coxeter_apply(&qr, 1).unwrap(),
                    k.preinjective_dim(r + 1).unwrap()
                );
            }
        }
        assert!(ctx(3).preprojective_dim(0).is_err());
        assert_eq!(ctx(3).preprojective_dim(4).unwrap(), d(8, 21));
    }

    #[test]
    fn lengths() {
        assert_eq!(d(0, 1).length(), BigUint::from(1u32));
        assert_eq!(d(1, 3).length(), BigUint::from(4u32));
        assert_eq!(d(2, 5).length(), BigUint::from(7u32));
    }

    #[test]
    fn positions() {
        let k3 = ctx(3);
        assert_eq!(
            k3.classify_position(&d(3, 8)),
            Ok(PositionClass::Preprojective(3))
        );
        assert_eq!(
            k3.classify_position(&d(3, 1)),
            Ok(PositionClass::Preinjective(1))
        );
        assert_eq!(
            k3.classify_position(&d(1, 0)),
            Ok(PositionClass::Preinjective(0))
        );
        assert_eq!(k3.classify_position(&d(13, 34)), Ok(PositionClass::Regular));
        assert!(matches!(
            k3.classify_position(&d(2, 0)),
            Err(DimError::NotARoot(_))
        ));
        for n in 3..7 {
            let k = ctx(n);
            for r in 1..=30 {
                let p = k.preprojective_dim(r).unwrap();
                assert_eq!(k.classify_position(&p), Ok(PositionClass::Preprojective(r)));
                let q = k.preinjective_dim(r).unwrap();
                assert_eq!(k.classify_position(&q), Ok(PositionClass::Preinjective(r)));
            }
        }
    }

    #[test]
    fn real_roots_are_exactly_the_sequences() {
        // brute force over a box: every real root must be located
        for n in 3..6 {
            let k = ctx(n);
            for a in 0..200u64 {
                for b in 0..200u64 {
                    if a + b == 0 {
                        continue;
                    }
                    let v = d(a, b);
                    if k.classify_root(&v) == Ok(RootKind::Real) {
                        assert!(k.classify_position(&v).is_ok(), "{v}");
                    }
                }
            }
        }
    }

    #[test]
    fn orbit_sums() {
        let k3 = ctx(3);
        assert_eq!(k3.orbit_sum_check(&d(1, 1), 0), Ok(true));
        assert_eq!(k3.orbit_sum_check(&d(1, 2), 1), Ok(true));
        assert_eq!(ctx(4).orbit_sum_check(&d(1, 1), 0), Ok(true));
        // the translates used above, computed independently
        assert_eq!(k3.coxeter_apply(&d(1, 2), -1).unwrap(), d(5, 13));
        assert_eq!(k3.coxeter_apply(&d(1, 2), -2).unwrap(), d(34, 89));
        assert!(matches!(
            k3.orbit_sum_check(&d(2, 1), 0),
            Err(DimError::Precondition(_))
        ));
    }

    #[test]
    fn hom_bounds() {
        let k3 = ctx(3);
        let r = |p: i64, q: i64| BigRational::new(p.into(), q.into());
        assert_eq!(k3.hom_bound_second_coord(&d(2, 5)).unwrap(), r(14, 3));
        assert_eq!(k3.hom_bound_second_coord(&d(1, 1)).unwrap(), r(2, 3));
        assert_eq!(ctx(4).hom_bound_second_coord(&d(1, 2)).unwrap(), r(1, 1));
        assert!(k3.hom_bound_second_coord(&d(1, 4)).is_err());
    }

    fn brute_window(k: &KroneckerContext, a: u64, b: u64) -> bool {
        (1..a).all(|t| !k.quadratic_form(&d(a - t, b + t)).is_negative())
    }

    #[test]
    fn root_windows() {
        let k3 = ctx(3);
        assert!(k3.root_window_check(&d(2, 5)));
        assert!(k3.root_window_check(&d(13, 34)));
        assert!(k3.root_window_check(&d(0, 1)));
        assert!(brute_window(&k3, 13, 34));
        // a vector where the window does contain imaginary roots
        assert!(!k3.root_window_check(&d(5, 2)));
        assert!(!brute_window(&k3, 5, 2));
    }

    #[test]
    fn root_window_on_translates() {
        for n in 3..7u32 {
            let k = ctx(n);
            for c in 1..n as u64 {
                for i in 1..12 {
                    let v = k.coxeter_apply(&d(1, c), -i).unwrap();
                    assert!(k.root_window_check(&v), "n={n} c={c} i={i}");
                }
            }
        }
    }

    #[test]
    fn dimvec_text_and_json() {
        let v = d(13, 34);
        assert_eq!(v.to_string(), "(13,34)");
        assert_eq!(DimVec::parse_pair("13,34").unwrap(), v);
        assert_eq!(DimVec::parse_pair("(13, 34)").unwrap(), v);
        assert!(DimVec::parse_pair("13").is_err());
        assert!(DimVec::parse_pair("1,2,3").is_err());
        let j = serde_json::to_string(&v).unwrap();
        assert_eq!(j, r#"["13","34"]"#);
        assert_eq!(serde_json::from_str::<DimVec>(&j).unwrap(), v);
    }

    proptest! {
        #[test]
        fn phi_inverse_is_inverse(n in 3u32..=12) {
            let k = ctx(n);
            let prod = mat_mul(&k.coxeter_matrix(), &k.inverse_coxeter_matrix());
            prop_assert_eq!(prod, [[BigInt::one(), BigInt::zero()], [BigInt::zero(), BigInt::one()]]);
        }

        #[test]
        fn q_is_tau_invariant(n in 3u32..=8, a in -10_000i64..10_000, b in -10_000i64..10_000, k in -6i64..=6) {
            let ctx = ctx(n);
            let (a, b) = (BigInt::from(a), BigInt::from(b));
            let (x, y) = ctx.coxeter_image((a.clone(), b.clone()), k);
            prop_assert_eq!(ctx.quadratic_form_signed(&x, &y), ctx.quadratic_form_signed(&a, &b));
        }

        #[test]
        fn orbit_grows_when_a_le_b(n in 3u32..=8, a in 0u64..500, extra in 0u64..500) {
            let ctx = ctx(n);
            let mut cur = d(a, a + extra);
            prop_assume!(!cur.is_zero());
            for _ in 0..20 {
                let next = ctx.coxeter_apply(&cur, -1).unwrap();
                prop_assert!(next.source < next.sink);
                prop_assert!(cur.strictly_below(&next) || cur.source.is_zero());
                prop_assert!(cur.length() < next.length());
                cur = next;
            }
        }

        #[test]
        fn one_c_orbits_keep_a_le_b(n in 3u32..=8, c in 1u64..8, i in 0i64..25) {
            prop_assume!(c < n as u64);
            let v = ctx(n).coxeter_apply(&d(1, c), -i).unwrap();
            prop_assert!(v.source <= v.sink);
        }

        #[test]
        fn window_closed_form_matches_brute(n in 3u32..=8, a in 0u64..300, b in 0u64..300) {
            let k = ctx(n);
            prop_assert_eq!(k.root_window_check(&d(a, b)), brute_window(&k, a, b));
        }
    }
}
