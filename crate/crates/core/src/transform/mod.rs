//! Proof transformations: inversion, contraction, generalized cut
//! elimination, translations between STL and iK_d, and the deduction
//! theorem.
//!
//! The public functions check their inputs; the crate-internal workers
//! assume well-formed cut-free iK_d proofs.

mod cut;
mod deduction;
mod structural;
mod translate;

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::kernel::{ProofError, ProofNode, ProofTree};
use crate::syntax::{Formula, Multiset, Sequent};

pub use cut::{cut_once, eliminate_cuts, eliminate_cuts_with, CutStrategy};
pub use deduction::{deduction_export, deduction_import, DeductionResult};
pub use structural::{contract, contract_to, invert, Inversion};
pub use translate::{ikd_to_stl, nabla_dist_proof, stl_to_ikd};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TransformError {
    InputRejected(ProofError),
    /// The formula to invert is absent or has the wrong shape.
    Target(String),
    /// Contraction needs two copies.
    Multiplicity(Formula),
    /// An endsequent does not have the shape the operation needs.
    Shape(String),
    /// A recursive cut did not decrease (rank, height sum).
    MeasureViolation {
        rank: usize,
        heights: usize,
        bound_rank: usize,
        bound_heights: usize,
    },
    HypothesisMismatch(Sequent),
    NotAVariant(Formula),
    /// The requested proof needs ⊃ but the calculus is ⊃-free.
    OutsideLanguage,
    /// A case the metatheory rules out.
    Internal(String),
}

impl fmt::Display for TransformError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TransformError::InputRejected(e) => write!(f, "input proof rejected: {e}"),
            TransformError::Target(s) | TransformError::Shape(s) => f.write_str(s),
            TransformError::Multiplicity(a) => write!(f, "`{a}` does not occur twice in the antecedent"),
            TransformError::MeasureViolation {
                rank,
                heights,
                bound_rank,
                bound_heights,
            } => write!(
                f,
                "cut measure ({rank}, {heights}) does not decrease below ({bound_rank}, {bound_heights})"
            ),
            TransformError::HypothesisMismatch(s) => write!(f, "hypothesis `{s}` is not the assumption"),
            TransformError::NotAVariant(b) => write!(f, "`{b}` is not a variant of the assumption"),
            TransformError::OutsideLanguage => f.write_str("=> is not available in a ⊃-free calculus"),
            TransformError::Internal(s) => write!(f, "internal invariant violated: {s}"),
        }
    }
}

impl core::error::Error for TransformError {}

pub(crate) type Res<T> = Result<T, TransformError>;

fn internal<T>(msg: impl Into<String>) -> Res<T> {
    Err(TransformError::Internal(msg.into()))
}

fn node_of(t: &ProofTree) -> Res<&ProofNode> {
    match t {
        ProofTree::Node(n) => Ok(n),
        ProofTree::Hypothesis(s) => internal(alloc::format!("unexpected hypothesis `{s}`")),
    }
}

/// The same rule over new premises and conclusion.
fn rebuild(nd: &ProofNode, sequent: Sequent, premises: Vec<ProofTree>) -> ProofTree {
    ProofTree::node(sequent, nd.rule.clone(), premises)
}

/// Removes one `out` and adds `ins`.
fn replace(m: &Multiset, out: &Formula, ins: &Multiset) -> Res<Multiset> {
    match m.without(out) {
        Some(rest) => Ok(rest.union(ins)),
        None => internal(alloc::format!("`{out}` missing from an antecedent")),
    }
}

/// Results keyed by node identity, so shared subproofs are processed once.
type Memo = BTreeMap<*const ProofNode, ProofTree>;

fn node_key(t: &ProofTree) -> Option<*const ProofNode> {
    match t {
        ProofTree::Node(n) => Some(alloc::sync::Arc::as_ptr(n)),
        ProofTree::Hypothesis(_) => None,
    }
}

#[cfg(test)]
mod tests;
