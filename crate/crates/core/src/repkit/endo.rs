//! Endomorphism algebras and indecomposability via Fitting's lemma.

use super::linalg::Matrix;
use super::rep::Rep;
use super::RepError;

/// An endomorphism `(φ1, φ2)`: `φ1` on the sink, `φ2` on the source, with
/// `φ1 α_i = α_i φ2` for every arrow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Endo {
    pub sink: Matrix,
    pub source: Matrix,
}

/// Basis of `End(R)`, read off the nullspace of the commutation system.
///
/// Unknowns are the `b²` entries of `φ1` followed by the `a²` entries of
/// `φ2`, both row-major.
pub fn endomorphisms(rep: &Rep) -> Vec<Endo> {
    let f = rep.field();
    let (a, b) = (rep.source_dim(), rep.sink_dim());
    let unknowns = b * b + a * a;
    let eqs = rep.maps().len() * a * b;
    let mut sys = Matrix::zeros(eqs, unknowns);
    let mut row = 0;
    for m in rep.maps() {
        for r in 0..b {
            for c in 0..a {
                // (φ1 α)_{rc} = Σ_k φ1[r][k] α[k][c]
                for k in 0..b {
                    let x = m.get(k, c);
                    if x != 0 {
                        sys.set(row, r * b + k, x);
                    }
                }
                // −(α φ2)_{rc} = −Σ_k α[r][k] φ2[k][c]
                for k in 0..a {
                    let x = m.get(r, k);
                    if x != 0 {
                        let idx = b * b + k * a + c;
                        let prev = sys.get(row, idx);
                        sys.set(row, idx, f.sub(prev, x));
                    }
                }
                row += 1;
            }
        }
    }
    sys.nullspace(f)
        .into_iter()
        .map(|v| Endo {
            sink: Matrix::from_vec(b, b, v[..b * b].to_vec()),
            source: Matrix::from_vec(a, a, v[b * b..].to_vec()),
        })
        .collect()
}

/// Indecomposability by enumerating `End(R)`.
///
/// A module of finite length is indecomposable iff each endomorphism is
/// nilpotent or invertible. One-dimensional endomorphism algebras (bricks)
/// are accepted without enumeration; otherwise all `p^d` elements are
/// visited, which must not exceed `budget`.
pub fn is_indecomposable(rep: &Rep, budget: u64) -> Result<bool, RepError> {
    if rep.length() == 0 {
        return Ok(false);
    }
    let basis = endomorphisms(rep);
    let d = basis.len();
    if d == 1 {
        return Ok(true);
    }
    let p = rep.field().p() as u64;
    let total = (p as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
    if total > budget as u128 {
        return Err(RepError::BudgetExceeded {
            what: "endomorphism enumeration",
            needed: total,
            budget: budget as u128,
        });
    }
    let f = rep.field();
    let (a, b) = (rep.source_dim(), rep.sink_dim());
    let mut coeffs = vec![0u8; d];
    for _ in 1..total {
        // increment in base p, skipping the zero element
        for c in coeffs.iter_mut() {
            *c += 1;
            if *c as u64 == p {
                *c = 0;
            } else {
                break;
            }
        }
        let mut s = Matrix::zeros(b, b);
        let mut t = Matrix::zeros(a, a);
        for (c, e) in coeffs.iter().zip(&basis) {
            if *c != 0 {
                s = add_scaled(&s, *c, &e.sink, rep);
                t = add_scaled(&t, *c, &e.source, rep);
            }
        }
        let invertible = s.rank(f) == b && t.rank(f) == a;
        if invertible {
            continue;
        }
        let nilpotent = s.pow(b, f).is_zero() && t.pow(a, f).is_zero();
        if !nilpotent {
            return Ok(false);
        }
    }
    Ok(true)
}

fn add_scaled(acc: &Matrix, c: u8, m: &Matrix, rep: &Rep) -> Matrix {
    let f = rep.field();
    let mut data = acc.data().to_vec();
    f.axpy(&mut data, c, m.data());
    Matrix::from_vec(acc.rows(), acc.cols(), data)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dimvec::KroneckerContext;
    use crate::repkit::field::PrimeField;
    use crate::repkit::rep::CanonicalKind;

    fn build(kind: CanonicalKind) -> Rep {
        Rep::build_canonical(
            KroneckerContext::new(3).unwrap(),
            PrimeField::new(2).unwrap(),
            &kind,
        )
        .unwrap()
    }

    #[test]
    fn canonical_bricks() {
        for kind in [
            CanonicalKind::P1,
            CanonicalKind::P2,
            CanonicalKind::Q0,
            CanonicalKind::Q1,
        ] {
            let r = build(kind);
            assert_eq!(endomorphisms(&r).len(), 1);
            assert_eq!(is_indecomposable(&r, 1 << 20), Ok(true));
        }
        let x = build(CanonicalKind::OneC {
            columns: vec![vec![1], vec![1], vec![0]],
        });
        assert_eq!(endomorphisms(&x).len(), 1);
        assert_eq!(is_indecomposable(&x, 1 << 20), Ok(true));
    }

    #[test]
    fn endomorphisms_commute() {
        for seed in 0..20 {
            let r = Rep::random(
                KroneckerContext::new(3).unwrap(),
                PrimeField::new(3).unwrap(),
                2,
                3,
                seed,
            );
            let f = r.field();
            for e in endomorphisms(&r) {
                for m in r.maps() {
                    assert_eq!(e.sink.mul(m, f), m.mul(&e.source, f));
                }
            }
        }
    }

    #[test]
    fn sums_decompose() {
        let p1 = build(CanonicalKind::P1);
        let sq = p1.direct_sum(&p1).unwrap();
        assert_eq!(endomorphisms(&sq).len(), 4);
        assert_eq!(is_indecomposable(&sq, 1 << 20), Ok(false));
        let mixed = build(CanonicalKind::P2)
            .direct_sum(&build(CanonicalKind::Q1))
            .unwrap();
        assert_eq!(is_indecomposable(&mixed, 1 << 20), Ok(false));
    }

    #[test]
    fn local_but_not_brick() {
        // (1,1) with all arrows zero is S2 ⊕ S1; (2,1) with arrows (1 0),(0 0),(0 0)
        // contains S2 as a summand: both must be rejected
        let k = KroneckerContext::new(3).unwrap();
        let f = PrimeField::new(2).unwrap();
        let z = Rep::new(k, f.clone(), 1, 1, vec![Matrix::zeros(1, 1); 3]).unwrap();
        assert_eq!(is_indecomposable(&z, 1 << 20), Ok(false));
        let m = Rep::new(
            k,
            f,
            2,
            1,
            vec![
                Matrix::from_vec(1, 2, vec![1, 0]),
                Matrix::zeros(1, 2),
                Matrix::zeros(1, 2),
            ],
        )
        .unwrap();
        assert_eq!(is_indecomposable(&m, 1 << 20), Ok(false));
    }

    #[test]
    fn budget_is_reported() {
        let p1 = build(CanonicalKind::P1);
        let sq = p1.direct_sum(&p1).unwrap();
        assert!(matches!(
            is_indecomposable(&sq, 4),
            Err(RepError::BudgetExceeded { needed: 16, .. })
        ));
    }
}
