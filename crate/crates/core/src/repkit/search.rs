//! Seeded constructions of indecomposables that have no simple closed form.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::endo::is_indecomposable;
use super::field::PrimeField;
use super::linalg::{Matrix, Subspace};
use super::rep::{Rep, SubRep};
use super::RepError;
use crate::dimvec::{DimVec, KroneckerContext};

/// First indecomposable among random representations of the given
/// dimension, drawn from one ChaCha8 stream. Returns the rep and the number
/// of draws used.
///
/// For a real root the indecomposable is unique up to isomorphism, so any
/// hit is the module of that dimension.
pub fn find_indecomposable(
    ctx: KroneckerContext,
    field: PrimeField,
    source_dim: usize,
    sink_dim: usize,
    seed: u64,
    max_tries: usize,
    end_budget: u64,
) -> Result<(Rep, usize), RepError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 1..=max_tries {
        let rep = Rep::random_with(ctx, field.clone(), source_dim, sink_dim, &mut rng);
        if is_indecomposable(&rep, end_budget)? {
            return Ok((rep, attempt));
        }
    }
    Err(RepError::SearchFailed {
        what: format!("indecomposable of dimension ({source_dim},{sink_dim})"),
        tries: max_tries,
    })
}

/// A module `M` of quasi-length two together with its quasi-simple socle.
#[derive(Clone, Debug)]
pub struct QuasiLengthTwo {
    pub rep: Rep,
    pub socle: SubRep,
    pub tries: usize,
}

/// Builds `X[2]` for an indecomposable `X` of dimension `(1, c)`.
///
/// Each draw glues a random indecomposable `X` of dimension `(1,c)` under a
/// random indecomposable `Z` of dimension `udim τ⁻¹X` with a random
/// off-diagonal block. If the glued module `M` is indecomposable, the
/// sequence `0 → X → M → Z → 0` does not split. Since
/// `Ext¹(Z, X) ≅ D Hom(X, τZ)` and `τZ` has the dimension of `X`, this forces
/// `τZ ≅ X`, and the middle term of the resulting almost split sequence is
/// `X[2]`.
pub fn find_quasi_length_two(
    ctx: KroneckerContext,
    field: PrimeField,
    c: usize,
    seed: u64,
    max_tries: usize,
    end_budget: u64,
) -> Result<QuasiLengthTwo, RepError> {
    let z_dim = ctx.coxeter_apply(&DimVec::new(1u32, c as u64), -1)?;
    let (za, zb) = z_dim
        .to_u64s()
        .map(|(a, b)| (a as usize, b as usize))
        .expect("small dimension");
    let (a, b) = (1 + za, c + zb);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 1..=max_tries {
        let x = Rep::random_with(ctx, field.clone(), 1, c, &mut rng);
        let z = Rep::random_with(ctx, field.clone(), za, zb, &mut rng);
        let glue = Rep::random_with(ctx, field.clone(), za, c, &mut rng);
        if !is_indecomposable(&x, end_budget)? || !is_indecomposable(&z, end_budget)? {
            continue;
        }
        let maps = (0..ctx.n() as usize)
            .map(|i| {
                let mut m = Matrix::zeros(b, a);
                for r in 0..c {
                    m.set(r, 0, x.maps()[i].get(r, 0));
                    for col in 0..za {
                        m.set(r, 1 + col, glue.maps()[i].get(r, col));
                    }
                }
                for r in 0..zb {
                    for col in 0..za {
                        m.set(c + r, 1 + col, z.maps()[i].get(r, col));
                    }
                }
                m
            })
            .collect();
        let rep = Rep::new(ctx, field.clone(), a, b, maps)?;
        if is_indecomposable(&rep, end_budget)? {
            let mut e = vec![0u8; a];
            e[0] = 1;
            let sink_basis: Vec<Vec<u8>> = (0..c)
                .map(|r| {
                    let mut v = vec![0u8; b];
                    v[r] = 1;
                    v
                })
                .collect();
            let socle = SubRep {
                source: Subspace::span(a, &[e], &field),
                sink: Subspace::span(b, &sink_basis, &field),
            };
            return Ok(QuasiLengthTwo {
                rep,
                socle,
                tries: attempt,
            });
        }
    }
    Err(RepError::SearchFailed {
        what: format!("quasi-length two module over (1,{c})"),
        tries: max_tries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_small_indecomposables() {
        let k = KroneckerContext::new(3).unwrap();
        let f = PrimeField::new(2).unwrap();
        let (r, _) = find_indecomposable(k, f.clone(), 2, 5, 1, 200, 1 << 20).unwrap();
        assert_eq!(r.dim(), DimVec::new(2u32, 5u32));
        let again = find_indecomposable(k, f, 2, 5, 1, 200, 1 << 20).unwrap();
        assert_eq!(again.0, r);
    }

    #[test]
    fn glued_module_has_planted_socle() {
        let k = KroneckerContext::new(3).unwrap();
        let f = PrimeField::new(2).unwrap();
        let q = find_quasi_length_two(k, f, 1, 5, 500, 1 << 20).unwrap();
        assert_eq!(q.rep.dim(), DimVec::new(3u32, 6u32));
        q.rep.validate_subrep(&q.socle).unwrap();
        assert_eq!(q.socle.dim(), DimVec::new(1u32, 1u32));
        let quotient = q.rep.quotient(&q.socle).unwrap();
        assert_eq!(quotient.dim(), DimVec::new(2u32, 5u32));
        assert_eq!(is_indecomposable(&quotient, 1 << 20), Ok(true));
    }
}
