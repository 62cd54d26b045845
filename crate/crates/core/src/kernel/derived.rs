//! Derived proofs: identity, modus ponens under ∇, the `∇□` left rule,
//! monotonicity of □ and abstraction.
//!
//! The free functions build trees without validating their inputs;
//! `derived_proof` is the checked entry point.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use core::fmt;

use super::proof::build::*;
use super::{check_proof, CalculusId, ProofError, ProofTree};
use crate::syntax::{Formula, Multiset, Sequent};

/// A proof of `A ⇒ A` for arbitrary `A`.
pub fn identity(a: &Formula) -> ProofTree {
    match a {
        Formula::Atom(_) => id_p(a.clone()),
        Formula::Bot => rw(l_bot(), Formula::Bot),
        Formula::Top => lw(r_top(), &Multiset::singleton(Formula::Top)),
        Formula::Nabla(b) => n(identity(b)),
        Formula::And(b, c) => {
            let both = Multiset::from(vec![(**b).clone(), (**c).clone()]);
            let left = lw_to(identity(b), &both);
            let right = lw_to(identity(c), &both);
            l_and_n(r_and(left, right), 0, a.clone())
        }
        Formula::Or(b, c) => {
            let left = r_or1(identity(b), (**c).clone());
            let right = r_or2(identity(c), (**b).clone());
            l_or_n(left, right, 0, a.clone())
        }
        Formula::HeytImp(b, c) => {
            let ctx = Multiset::from(vec![a.clone(), (**b).clone()]);
            let left = lw_to(identity(b), &ctx);
            let right = lw_to(identity(c), &Multiset::from(vec![(**b).clone(), (**c).clone()]));
            r_heyt_imp(l_heyt_imp_n(left, right, 0, a.clone()), (**b).clone())
        }
        Formula::DynImp(b, c) => {
            let p = Formula::nabla(a.clone());
            let ctx = Multiset::from(vec![p.clone(), (**b).clone()]);
            let left = lw_to(identity(b), &ctx);
            let right = lw_to(identity(c), &ctx.with((**c).clone()));
            let body = l_dyn_imp_n(left, right, 0, p);
            r_dyn_imp(body, Multiset::singleton(a.clone()), (**b).clone())
        }
    }
}

/// A proof of `A, ∇(A→B) ⇒ B`.
pub fn mp(a: &Formula, b: &Formula) -> ProofTree {
    let p = Formula::nabla(Formula::dyn_imp(a.clone(), b.clone()));
    let ctx = Multiset::from(vec![a.clone(), p.clone()]);
    let left = lw_to(identity(a), &ctx);
    let right = lw_to(identity(b), &ctx.with(b.clone()));
    l_dyn_imp_n(left, right, 0, p)
}

/// From a proof of `Γ, A ⇒ Δ` builds one of `Γ, ∇□A ⇒ Δ`.
pub fn nabla_box_left(d: ProofTree, a: &Formula) -> ProofTree {
    let p = Formula::nabla(Formula::boxed(a.clone()));
    let s = d.sequent().clone();
    let gamma = s
        .antecedent
        .without(a)
        .expect("nabla_box_left: formula not in antecedent");
    let ctx = gamma.with(p.clone());
    let left = lw_to(r_top(), &ctx);
    let right = lw(d, &Multiset::singleton(p.clone()));
    l_dyn_imp_n(left, right, 0, p)
}

/// From a proof of `Γ ⇒ A` builds one of `□Γ ⇒ □A`.
pub fn box_mono(d: ProofTree) -> ProofTree {
    let gamma = d.sequent().antecedent.clone();
    let d = gamma.iter().fold(d, nabla_box_left);
    let d = lw(d, &Multiset::singleton(Formula::Top));
    r_dyn_imp(d, gamma.boxed(), Formula::Top)
}

/// From a proof of `∇Γ, Σ, A ⇒ B` builds one of `Γ, □Σ ⇒ A→B`.
pub fn abstraction(d: ProofTree, gamma: &Multiset, sigma: &Multiset, a: &Formula) -> ProofTree {
    let d = sigma.iter().fold(d, nabla_box_left);
    r_dyn_imp(d, gamma.union(&sigma.boxed()), a.clone())
}

/// Selector for the checked constructor.
#[derive(Clone, Debug)]
pub enum DerivedKind {
    Identity(Formula),
    Mp(Formula, Formula),
    NablaBoxLeft {
        proof: ProofTree,
        formula: Formula,
    },
    BoxMono(ProofTree),
    Abstraction {
        proof: ProofTree,
        gamma: Multiset,
        sigma: Multiset,
        formula: Formula,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DerivedError {
    InputRejected(ProofError),
    Shape(String),
}

impl fmt::Display for DerivedError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DerivedError::InputRejected(e) => write!(f, "input proof rejected: {e}"),
            DerivedError::Shape(s) => f.write_str(s),
        }
    }
}

impl core::error::Error for DerivedError {}

/// Checks the argument proof under `calc`, verifies its endsequent has
/// the shape the construction needs, and builds the derived proof.
pub fn derived_proof(kind: DerivedKind, calc: CalculusId) -> Result<ProofTree, DerivedError> {
    let checked = |t: &ProofTree| check_proof(t, calc).map_err(DerivedError::InputRejected);
    match kind {
        DerivedKind::Identity(a) => Ok(identity(&a)),
        DerivedKind::Mp(a, b) => Ok(mp(&a, &b)),
        DerivedKind::NablaBoxLeft { proof, formula } => {
            checked(&proof)?;
            if !proof.sequent().antecedent.contains(&formula) {
                return Err(DerivedError::Shape(format!(
                    "`{formula}` is not in the antecedent of `{}`",
                    proof.sequent()
                )));
            }
            Ok(nabla_box_left(proof, &formula))
        }
        DerivedKind::BoxMono(proof) => {
            checked(&proof)?;
            if proof.sequent().succedent.is_none() {
                return Err(DerivedError::Shape("box_mono needs a nonempty succedent".into()));
            }
            Ok(box_mono(proof))
        }
        DerivedKind::Abstraction {
            proof,
            gamma,
            sigma,
            formula,
        } => {
            checked(&proof)?;
            let expected = gamma.nabla(1).union(&sigma).with(formula.clone());
            let s: &Sequent = proof.sequent();
            if s.antecedent != expected || s.succedent.is_none() {
                return Err(DerivedError::Shape(format!(
                    "abstraction expects antecedent {expected:?} and a succedent, found `{s}`"
                )));
            }
            Ok(abstraction(proof, &gamma, &sigma, &formula))
        }
    }
}
