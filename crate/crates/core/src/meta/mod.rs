//! Admissible-rule extractors: the disjunction property, Visser's rules in
//! their disjunctive, implicative and Heyting implicative forms, and
//! Maehara-style interpolation.
//!
//! Every extractor works on a proof and returns proofs; outputs are checked
//! before they are handed back.

mod interpolate;
mod visser;

use alloc::string::String;
use core::fmt;

use crate::kernel::{ProofError, ProofNode, ProofTree};
use crate::search::SearchError;
use crate::syntax::{Multiset, Sequent};
use crate::transform::TransformError;

pub use interpolate::{
    deductive_interpolant, interpolate, interpolate_formula, Construction, DeductiveInterpolation,
    FormulaInterpolation, InterpolationResult, InterpolationStep, Side,
};
pub use visser::{
    split_disjunction, visser_disjunctive, visser_heyting, visser_implicative, visser_star, Disjunct, VisserAntecedent,
    VisserFamily, VisserVerdict,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MetaError {
    InputRejected(ProofError),
    /// The endsequent antecedent is not the one the extractor was given.
    AntecedentMismatch {
        expected: Multiset,
        found: Multiset,
    },
    /// The endsequent succedent does not have the shape the extractor needs.
    Shape(Sequent),
    /// The occurrence split is out of range or repeats an index.
    InvalidSplit(String),
    /// ⊃ occurs where only the ⊃-free language is allowed.
    OutsideLanguage,
    Transform(TransformError),
    Search(SearchError),
    /// A case the metatheory rules out.
    Internal(String),
}

impl fmt::Display for MetaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MetaError::InputRejected(e) => write!(f, "input proof rejected: {e}"),
            MetaError::AntecedentMismatch { expected, found } => {
                write!(f, "antecedent {found:?} differs from the expected {expected:?}")
            }
            MetaError::Shape(s) => write!(f, "`{s}` does not have the required shape"),
            MetaError::InvalidSplit(s) => write!(f, "invalid split: {s}"),
            MetaError::OutsideLanguage => f.write_str("=> is not allowed here"),
            MetaError::Transform(e) => write!(f, "{e}"),
            MetaError::Search(e) => write!(f, "{e}"),
            MetaError::Internal(s) => write!(f, "internal invariant violated: {s}"),
        }
    }
}

impl core::error::Error for MetaError {}

impl From<TransformError> for MetaError {
    fn from(e: TransformError) -> Self {
        MetaError::Transform(e)
    }
}

impl From<SearchError> for MetaError {
    fn from(e: SearchError) -> Self {
        MetaError::Search(e)
    }
}

type Res<T> = Result<T, MetaError>;

fn internal<T>(msg: impl Into<String>) -> Res<T> {
    Err(MetaError::Internal(msg.into()))
}

fn node_of(t: &ProofTree) -> Res<&ProofNode> {
    match t {
        ProofTree::Node(n) => Ok(n),
        ProofTree::Hypothesis(s) => internal(alloc::format!("unexpected hypothesis `{s}`")),
    }
}
