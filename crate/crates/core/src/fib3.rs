//! The 3-Kronecker quiver, where τ-orbits are governed by Fibonacci numbers.
//!
//! For `n = 3` and `i ≥ 1`
//!
//! ```text
//! τ^i (a,b)  = (F_{4i+2}a − F_{4i}b,  F_{4i}a − F_{4i−2}b)
//! τ^-i(a,b)  = (F_{4i}b − F_{4i−2}a,  F_{4i+2}b − F_{4i}a)
//! ```
//!
//! The regular component through `(1,1)` has quasi-simples `τ^t(1,1)` and
//! the module of quasi-length `m` at the centre of the component has
//! dimension `F_{2m}(1,1)` for odd `m` and `F_{2m}(2,1)` for even `m`.

use std::sync::RwLock;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::dimvec::DimVec;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FibError {
    #[error("τ^{k} of {start} has a negative entry")]
    NegativeEntry { start: String, k: i64 },
    #[error("unsupported anchor {0}: expected (1,1) or (1,2)")]
    BadAnchor(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

static FIB: RwLock<Vec<BigUint>> = RwLock::new(Vec::new());

/// `F_k` from a shared table that grows on demand.
pub fn fibonacci(k: usize) -> BigUint {
    if let Some(f) = FIB.read().expect("fib table poisoned").get(k) {
        return f.clone();
    }
    let mut table = FIB.write().expect("fib table poisoned");
    if table.is_empty() {
        table.push(BigUint::zero());
        table.push(BigUint::one());
    }
    while table.len() <= k {
        let next = &table[table.len() - 1] + &table[table.len() - 2];
        table.push(next);
    }
    table[k].clone()
}

/// `F_k` for `k ≥ −1`, with `F_{−1} = 1` so that `F_1 = F_0 + F_{−1}`.
pub fn fibonacci_signed(k: i64) -> BigInt {
    match k {
        -1 => BigInt::one(),
        k if k < -1 => panic!("F_{k} is never needed here"),
        k => BigInt::from(fibonacci(k as usize)),
    }
}

/// Signed closed form of `τ^k v` for `n = 3`; no positivity check.
pub fn tau_power_signed(v: (&BigInt, &BigInt), k: i64) -> (BigInt, BigInt) {
    let (a, b) = v;
    if k == 0 {
        return (a.clone(), b.clone());
    }
    let i = k.abs();
    let f = |s: i64| fibonacci_signed(4 * i + s);
    if k > 0 {
        (f(2) * a - f(0) * b, f(0) * a - f(-2) * b)
    } else {
        (f(0) * b - f(-2) * a, f(2) * b - f(0) * a)
    }
}

/// `udim τ^k M` for `udim M = v` over the 3-Kronecker quiver.
pub fn tau_power_closed_form(v: &DimVec, k: i64) -> Result<DimVec, FibError> {
    let (a, b) = v.to_signed();
    let (x, y) = tau_power_signed((&a, &b), k);
    DimVec::from_signed(&x, &y).ok_or_else(|| FibError::NegativeEntry {
        start: v.to_string(),
        k,
    })
}

/// Which of the two shapes `F_{2m}(1,1)` / `F_{2m}(2,1)` applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    pub fn of(m: u64) -> Parity {
        if m % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }
}

/// Dimension of the quasi-length `m` module `X_m` on the symmetry axis of
/// the `(1,1)` component.
pub fn quasi_length_dim(m: u64) -> Result<DimVec, FibError> {
    if m == 0 {
        return Err(FibError::Precondition("quasi-length starts at 1".into()));
    }
    let f = fibonacci(2 * m as usize);
    Ok(match Parity::of(m) {
        Parity::Odd => DimVec::new(f.clone(), f),
        Parity::Even => DimVec::new(&f * 2u32, f),
    })
}

/// `F_rF_s + F_{r−1}F_{s−1} = F_{r+s−1}`.
pub fn fib_identity_check(r: usize, s: usize) -> Result<bool, FibError> {
    if r == 0 || s == 0 {
        return Err(FibError::Precondition("need r, s ≥ 1".into()));
    }
    let lhs = fibonacci(r) * fibonacci(s) + fibonacci(r - 1) * fibonacci(s - 1);
    Ok(lhs == fibonacci(r + s - 1))
}

/// Componentwise `τ^{-i}(F_{2m}(1,1)) < τ^{-(i+(m+1)/2)}(1,1)` for odd `m`.
pub fn compare3_holds(m: u64, i: u64) -> Result<bool, FibError> {
    if m.is_multiple_of(2) {
        return Err(FibError::Precondition(format!("m = {m} must be odd")));
    }
    let f = fibonacci(2 * m as usize);
    let lhs = tau_power_closed_form(&DimVec::new(f.clone(), f), -(i as i64))?;
    let rhs = tau_power_closed_form(&DimVec::new(1u32, 1u32), -((i + m.div_ceil(2)) as i64))?;
    Ok(lhs.strictly_below(&rhs))
}

/// Even analogue: `τ^{-i}(F_{2m}(1,2)) < τ^{-(i+m/2+1)}(1,1)` componentwise.
pub fn compare4_holds(m: u64, i: u64) -> Result<bool, FibError> {
    if m % 2 == 1 || m == 0 {
        return Err(FibError::Precondition(format!(
            "m = {m} must be even and positive"
        )));
    }
    let f = fibonacci(2 * m as usize);
    let lhs = tau_power_closed_form(&DimVec::new(f.clone(), &f * 2u32), -(i as i64))?;
    let rhs = tau_power_closed_form(&DimVec::new(1u32, 1u32), -((i + m / 2 + 1) as i64))?;
    Ok(lhs.strictly_below(&rhs))
}

/// A window of the regular component through `(1,1)` or `(1,2)`.
///
/// Cells are indexed by quasi-length `j ≥ 1` and orbit offset `t`, with
/// `cell(j, t) = Σ_{s=t}^{t+j−1} τ^{-s}(anchor)`. On the page the cell sits
/// in column `x = 2t + j − 1 + δ`, where `δ = 0` for `(1,1)` and `δ = 1` for
/// `(1,2)`, so the `(1,1)` component is symmetric about `x = 0` and the
/// `(1,2)` component about `x = 1`. A window of radius `R` keeps the cells
/// with `|x − δ| ≤ 2R`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentGrid {
    pub anchor: DimVec,
    pub tau_radius: u32,
    pub ql_max: u32,
    pub cells: Vec<GridCell>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GridCell {
    pub quasi_length: u32,
    pub offset: i64,
    pub column: i64,
    pub dim: DimVec,
}

fn anchor_shift(anchor: &DimVec) -> Result<i64, FibError> {
    match anchor.to_u64s() {
        Some((1, 1)) => Ok(0),
        Some((1, 2)) => Ok(1),
        _ => Err(FibError::BadAnchor(anchor.to_string())),
    }
}

/// `Σ_{s=t}^{t+j−1} τ^{-s}(anchor)`.
pub fn grid_cell(anchor: &DimVec, j: u32, t: i64) -> Result<DimVec, FibError> {
    let mut sum = DimVec::default();
    for s in t..t + j as i64 {
        sum = &sum + &tau_power_closed_form(anchor, -s)?;
    }
    Ok(sum)
}

impl ComponentGrid {
    pub fn new(anchor: &DimVec, tau_radius: u32, ql_max: u32) -> Result<Self, FibError> {
        let delta = anchor_shift(anchor)?;
        if ql_max == 0 {
            return Err(FibError::Precondition("ql_max must be ≥ 1".into()));
        }
        let r = 2 * tau_radius as i64;
        let mut cells = Vec::new();
        for j in 1..=ql_max {
            for x in -r..=r {
                // x = 2t + j − 1 needs matching parity
                let twice_t = x - (j as i64 - 1);
                if twice_t.rem_euclid(2) != 0 {
                    continue;
                }
                let t = twice_t / 2;
                cells.push(GridCell {
                    quasi_length: j,
                    offset: t,
                    column: x + delta,
                    dim: grid_cell(anchor, j, t)?,
                });
            }
        }
        Ok(ComponentGrid {
            anchor: anchor.clone(),
            tau_radius,
            ql_max,
            cells,
        })
    }

    pub fn get(&self, j: u32, t: i64) -> Option<&DimVec> {
        self.cells
            .iter()
            .find(|c| c.quasi_length == j && c.offset == t)
            .map(|c| &c.dim)
    }

    /// Finds where a dimension vector sits in the window.
    pub fn locate(&self, dim: &DimVec) -> Option<&GridCell> {
        self.cells.iter().find(|c| &c.dim == dim)
    }

    /// Columns occupied in the window, left to right.
    pub fn columns(&self) -> Vec<i64> {
        let mut cols: Vec<i64> = self.cells.iter().map(|c| c.column).collect();
        cols.sort_unstable();
        cols.dedup();
        cols
    }
}

/// Checks that two modules of the `(1,1)` component with the same length
/// are mirror images: equal quasi-length and opposite columns.
///
/// Both vectors are located by searching a window large enough to contain
/// anything of their length. Vectors of different length give `false`.
pub fn same_length_mirror(m: &DimVec, n: &DimVec) -> Result<bool, FibError> {
    if m.length() != n.length() {
        return Ok(false);
    }
    let (cm, cn) = (locate_in_component(m)?, locate_in_component(n)?);
    match (cm, cn) {
        (Some((jm, xm)), Some((jn, xn))) => Ok(jm == jn && xm == -xn),
        _ => Err(FibError::Precondition(format!(
            "{m} and {n} must both lie in the (1,1) component"
        ))),
    }
}

/// `(quasi-length, column)` of `v` in the `(1,1)` component, if it is there.
///
/// Lengths grow at least linearly in both `j` and `|t|`, so a search bounded
/// by the length of `v` is exhaustive.
pub fn locate_in_component(v: &DimVec) -> Result<Option<(u32, i64)>, FibError> {
    let anchor = DimVec::new(1u32, 1u32);
    let len = v.length();
    let mut j = 1u32;
    while BigUint::from(2 * j as u64) <= len {
        let mut t = 0i64;
        loop {
            let mut hit = None;
            let mut all_longer = true;
            for s in [t, -t] {
                let cell = grid_cell(&anchor, j, s)?;
                if cell.length() <= len {
                    all_longer = false;
                }
                if &cell == v {
                    hit = Some((j, 2 * s + j as i64 - 1));
                }
            }
            if hit.is_some() {
                return Ok(hit);
            }
            if all_longer && t > 0 {
                break;
            }
            t += 1;
        }
        j += 1;
    }
    Ok(None)
}
