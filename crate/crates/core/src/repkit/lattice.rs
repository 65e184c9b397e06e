//! The full lattice of subrepresentations.

use std::collections::HashMap;

use rayon::prelude::*;

use super::endo::is_indecomposable;
use super::linalg::{subspace_count, subspaces_of_dim, subspaces_within};
use super::rep::{Rep, SubRep};
use super::RepError;

/// All subrepresentations of a representation, sorted by length.
#[derive(Clone, Debug)]
pub struct SubrepLattice {
    nodes: Vec<SubRep>,
    index: HashMap<(Vec<u8>, Vec<u8>), usize>,
}

/// Enumerates every subrepresentation.
///
/// The outer loop runs over sink subspaces `U1`, the inner loop over
/// subspaces of `W(U1) = ∩ α_i⁻¹(U1)`; each pair `(U2, U1)` with
/// `U2 ⊆ W(U1)` is closed, and every closed pair arises once. The number of
/// sink subspaces is checked against `budget` up front and the running node
/// count during the walk.
pub fn enumerate_submodules(rep: &Rep, budget: u64) -> Result<SubrepLattice, RepError> {
    let f = rep.field();
    let p = f.p() as u64;
    let outer = subspace_count(rep.sink_dim(), p);
    if outer > budget as u128 {
        return Err(RepError::BudgetExceeded {
            what: "subrepresentation lattice",
            needed: outer,
            budget: budget as u128,
        });
    }
    let mut nodes = Vec::new();
    for k in 0..=rep.sink_dim() {
        for sink in subspaces_of_dim(rep.sink_dim(), k, f) {
            let w = rep.preimage(&sink);
            let inner = subspace_count(w.dim(), p);
            if nodes.len() as u128 + inner > budget as u128 {
                return Err(RepError::BudgetExceeded {
                    what: "subrepresentation lattice",
                    needed: nodes.len() as u128 + inner,
                    budget: budget as u128,
                });
            }
            for source in subspaces_within(&w, f) {
                nodes.push(SubRep {
                    source,
                    sink: sink.clone(),
                });
            }
        }
    }
    nodes.sort_by_key(|u| u.length());
    let index = nodes
        .iter()
        .enumerate()
        .map(|(i, u)| (u.key(), i))
        .collect();
    Ok(SubrepLattice { nodes, index })
}

impl SubrepLattice {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[SubRep] {
        &self.nodes
    }

    pub fn find(&self, u: &SubRep) -> Option<usize> {
        self.index.get(&u.key()).copied()
    }

    /// `true` iff node `i` is contained in node `j`.
    pub fn contains(&self, rep: &Rep, i: usize, j: usize) -> bool {
        self.nodes[i].is_contained_in(&self.nodes[j], rep.field())
    }

    /// Nodes one step below `i`: contained in it with length one less.
    pub fn lower_covers(&self, rep: &Rep, i: usize) -> Vec<usize> {
        let len = self.nodes[i].length();
        if len == 0 {
            return Vec::new();
        }
        (0..self.nodes.len())
            .filter(|&j| self.nodes[j].length() + 1 == len && self.contains(rep, j, i))
            .collect()
    }

    /// Indecomposability of every node, checked in parallel.
    pub fn indecomposables(&self, rep: &Rep, end_budget: u64) -> Result<Vec<bool>, RepError> {
        self.nodes
            .par_iter()
            .map(|u| is_indecomposable(&rep.restrict(u)?, end_budget))
            .collect()
    }
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
    fn small_lattices() {
        let p1 = enumerate_submodules(&build(CanonicalKind::P1), 1_000_000).unwrap();
        assert_eq!(p1.len(), 2);
        let x = build(CanonicalKind::OneC {
            columns: vec![vec![1], vec![1], vec![0]],
        });
        let lx = enumerate_submodules(&x, 1_000_000).unwrap();
        assert_eq!(lx.len(), 3);
        // P2: every sink subspace with the zero source, plus the whole module
        let p2 = build(CanonicalKind::P2);
        let lp2 = enumerate_submodules(&p2, 1_000_000).unwrap();
        assert_eq!(lp2.len(), 17);
        let top = lp2.find(&p2.whole()).unwrap();
        assert_eq!(lp2.lower_covers(&p2, top).len(), 1);
    }

    #[test]
    fn every_node_is_closed_and_unique() {
        for seed in 0..10 {
            let r = Rep::random(
                KroneckerContext::new(3).unwrap(),
                PrimeField::new(2).unwrap(),
                2,
                3,
                seed,
            );
            let l = enumerate_submodules(&r, 1_000_000).unwrap();
            for u in l.nodes() {
                r.validate_subrep(u).unwrap();
            }
            assert_eq!(l.index.len(), l.len());
        }
    }

    #[test]
    fn budget_enforced() {
        let r = Rep::random(
            KroneckerContext::new(3).unwrap(),
            PrimeField::new(2).unwrap(),
            2,
            5,
            3,
        );
        assert!(matches!(
            enumerate_submodules(&r, 10),
            Err(RepError::BudgetExceeded { .. })
        ));
    }
}
