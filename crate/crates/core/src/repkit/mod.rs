//! Explicit representations over `F_p` and a from-the-definition GR oracle.
//!
//! The oracle works over a finite field while the theory it checks is
//! usually stated over an algebraically closed one. The instances checked
//! here do not depend on that, but a finite-field sample cannot refute a
//! statement that only holds over an algebraically closed field.

pub mod endo;
pub mod field;
pub mod lattice;
pub mod linalg;
pub mod oracle;
pub mod rep;
pub mod search;

use thiserror::Error;

use crate::dimvec::DimError;

pub use endo::{endomorphisms, is_indecomposable, Endo};
pub use field::PrimeField;
pub use lattice::{enumerate_submodules, SubrepLattice};
pub use linalg::{Matrix, Subspace};
pub use oracle::{
    gr_measure_oracle, gr_submodules, in_b, is_piling, naive_measure, run_oracle,
    verify_certificate, GrCertificate, OracleConfig, OracleTable,
};
pub use rep::{CanonicalKind, Rep, SubRep};
pub use search::{find_indecomposable, find_quasi_length_two, QuasiLengthTwo};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error("{0} is not a prime below 256")]
    NotPrime(u32),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("matrix entry outside [0, {0})")]
    EntryRange(u32),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("invalid subrepresentation: {0}")]
    InvalidSubRep(String),
    #[error("{what} needs {needed} steps, budget is {budget}")]
    BudgetExceeded {
        what: &'static str,
        needed: u128,
        budget: u128,
    },
    #[error("representation of dimension {0} is not indecomposable")]
    NotIndecomposable(String),
    #[error("no {what} found in {tries} tries")]
    SearchFailed { what: String, tries: usize },
    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
    #[error("schema violation: {0}")]
    Schema(String),
    #[error(transparent)]
    Dim(#[from] DimError),
}
