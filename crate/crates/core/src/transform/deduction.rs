use alloc::format;
use alloc::vec::Vec;

use super::cut::{cut_unchecked, elim, CutStrategy};
use super::structural::contract_to_unchecked;
use super::{internal, rebuild, Memo, Res, TransformError};
use crate::kernel::build::*;
use crate::kernel::derived::{abstraction, box_mono, identity};
use crate::kernel::{check_proof, CalculusId, ProofTree, RuleId};
use crate::syntax::{Formula, Multiset, Sequent, VariantStep};

/// A cut-free, hypothesis-free proof of `Γ, Σ ⇒ Δ`, where every formula of
/// `Σ` is a variant of the assumption.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeductionResult {
    pub sigma: Multiset,
    pub proof: ProofTree,
}

/// Discharges the hypotheses `⇒ A` of a proof of `Γ ⇒ Δ`.
pub fn deduction_export(t: &ProofTree, a: &Formula) -> Result<DeductionResult, TransformError> {
    check_proof(t, CalculusId::ikd().with_cut(true).with_hypotheses(true)).map_err(TransformError::InputRejected)?;
    let expected = Sequent::theorem(a.clone());
    if let Some(h) = t.hypotheses().into_iter().find(|h| **h != expected) {
        return Err(TransformError::HypothesisMismatch(h.clone()));
    }
    let (sigma, proof) = export(t, a, &mut Memo::new())?;
    let want = t.sequent().with_antecedent(t.sequent().antecedent.union(&sigma));
    if proof.sequent() != &want {
        return internal(format!("export produced `{}` instead of `{want}`", proof.sequent()));
    }
    Ok(DeductionResult { sigma, proof })
}

fn export(t: &ProofTree, a: &Formula, memo: &mut Memo) -> Res<(Multiset, ProofTree)> {
    if !t.has_hypotheses() {
        return Ok((Multiset::new(), elim(t, CutStrategy::LeftFirst, memo)?));
    }
    let ProofTree::Node(nd) = t else {
        return Ok((Multiset::singleton(a.clone()), identity(a)));
    };
    let mut subs = nd
        .premises
        .iter()
        .map(|p| export(p, a, memo))
        .collect::<Res<Vec<_>>>()?;
    let s = &nd.sequent;
    let extended = |sigma: &Multiset| s.with_antecedent(s.antecedent.union(sigma));
    match nd.rule.rule {
        RuleId::RDynImp => {
            let (sigma, d) = subs.pop().unwrap();
            let prem = nd.premises[0].sequent();
            let (Some(Formula::DynImp(x, _)), Some(_)) = (&s.succedent, &prem.succedent) else {
                return internal("R→ without an implication");
            };
            let proof = abstraction(d, &s.antecedent, &sigma, x);
            Ok((sigma.boxed(), proof))
        }
        RuleId::N => {
            let (sigma, d) = subs.pop().unwrap();
            Ok((sigma.nabla(1), n(d)))
        }
        RuleId::Cut => {
            let (s2, d2) = subs.pop().unwrap();
            let (s1, d1) = subs.pop().unwrap();
            let k = nd.rule.exponent();
            let c = cut_unchecked(&d1, &d2, k, CutStrategy::LeftFirst)?;
            let sigma = s2.union(&s1.nabla(k)).to_set();
            let proof = contract_to_unchecked(&c, &extended(&sigma).antecedent)?;
            Ok((sigma, proof))
        }
        RuleId::LW => {
            let (sigma, d) = subs.pop().unwrap();
            Ok((sigma, lw(d, nd.rule.intro.as_ref().unwrap())))
        }
        RuleId::Rw | RuleId::LAndN | RuleId::ROr1 | RuleId::ROr2 | RuleId::RHeytImp => {
            let (sigma, d) = subs.pop().unwrap();
            Ok((sigma.clone(), rebuild(nd, extended(&sigma), alloc::vec![d])))
        }
        RuleId::RAnd | RuleId::LOrN | RuleId::LDynImpN | RuleId::LHeytImpN => {
            let sigma = subs[0].0.union(&subs[1].0).to_set();
            let ps = subs
                .into_iter()
                .map(|(si, d)| lw(d, &sigma.difference(&si).unwrap()))
                .collect();
            Ok((sigma.clone(), rebuild(nd, extended(&sigma), ps)))
        }
        other => internal(format!("{} above a hypothesis", other.name())),
    }
}

/// From a cut-free proof of `Γ, Σ ⇒ Δ` and the assumption `A`, rebuilds a
/// proof of `Γ ⇒ Δ` from hypotheses `⇒ A` by cutting each variant in `Σ`.
pub fn deduction_import(a: &Formula, sigma: &Multiset, t: &ProofTree) -> Result<ProofTree, TransformError> {
    check_proof(t, CalculusId::ikd().with_cut(true)).map_err(TransformError::InputRejected)?;
    if !sigma.is_submultiset_of(&t.sequent().antecedent) {
        return Err(TransformError::Shape(format!(
            "{sigma:?} is not inside the antecedent of `{}`",
            t.sequent()
        )));
    }
    let mut out = t.clone();
    for b in sigma.iter() {
        let path = b
            .variant_path(a)
            .ok_or_else(|| TransformError::NotAVariant(b.clone()))?;
        let h = path
            .iter()
            .fold(hypothesis(Sequent::theorem(a.clone())), |h, step| match step {
                VariantStep::Nabla => n(h),
                VariantStep::Box => box_mono(h),
            });
        out = cut(h, out, 0);
    }
    Ok(out)
}
