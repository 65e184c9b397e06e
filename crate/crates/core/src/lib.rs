//! Gabriel-Roiter measures over the wild n-Kronecker quiver.
//!
//! Two engines live here. The symbolic side (`grorder`, `dimvec`, `grsym`,
//! `fib3`) works purely with dimension vectors and closed forms, so it
//! handles modules of any size. The `repkit` side builds explicit
//! representations over a small prime field and computes measures straight
//! from the definition, which is slow but independent. Tests and the CLI's
//! `verify` command play the two against each other.
//!
//! Dimension vectors are written `(a, b)` with `a` the dimension at the
//! source vertex and `b` at the sink, so the simple projective is `(0, 1)`.

pub mod dimvec;
pub mod fib3;
pub mod grorder;
pub mod grsym;
pub mod repkit;

pub use dimvec::{DimError, DimVec, KroneckerContext, PositionClass, RootKind};
pub use grorder::{GrMeasure, MeasureError};
pub use grsym::{GrError, ModuleLabel, RegularCoord, SymbolicEngine};
