//! Proof kernel, bounded proof search and proof transformations for the
//! intuitionistic dynamic sequent calculi iK_d, iK_d* and their cut-ful
//! companions STL(N,H), STL(N), together with a finite ∇-algebra oracle.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod algebra;
#[cfg(any(test, feature = "gen"))]
pub mod gen;
pub mod kernel;
pub mod meta;
pub mod search;
pub mod syntax;
pub mod transform;

#[cfg(test)]
mod testutil;

pub use kernel::{
    check_instance, check_proof, Base, CalculusId, ProofError, ProofNode, ProofTree, RuleId, RuleInstance,
};

pub use search::{
    prove, prove_formula, prove_with, BudgetDimension, SearchBudget, SearchError, SearchOptions, SearchOutcome,
    SearchReport,
};
pub use syntax::{parse_formula, parse_sequent, Formula, Multiset, NablaPrefix, ParseError, Sequent};
