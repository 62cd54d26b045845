use alloc::format;
use alloc::vec::Vec;

use super::{internal, node_of, rebuild, replace, Res, TransformError};
use crate::kernel::build::*;
use crate::kernel::{check_proof, CalculusId, ProofTree, RuleId};
use crate::syntax::{Formula, Multiset};

/// Result of inverting a left formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Inversion {
    Single(ProofTree),
    Pair(ProofTree, ProofTree),
}

/// Inverts the antecedent formula `target`, which must be `∇ⁿ(A∧B)`,
/// `∇ⁿ(A∨B)` or `∇ⁿ(A⊃B)`. The outputs are no higher than `t`.
pub fn invert(t: &ProofTree, target: &Formula) -> Result<Inversion, TransformError> {
    check_proof(t, CalculusId::ikd()).map_err(TransformError::InputRejected)?;
    if !t.sequent().antecedent.contains(target) {
        return Err(TransformError::Target(format!(
            "`{target}` is not in the antecedent of `{}`",
            t.sequent()
        )));
    }
    let sn = target.strip_nabla();
    let n = sn.depth;
    let wrap = |f: &Formula| f.clone().nabla_n(n);
    match &sn.core {
        Formula::And(a, b) => Ok(Inversion::Single(invert_unchecked(
            t,
            target,
            &Multiset::from(alloc::vec![wrap(a), wrap(b)]),
            0,
        )?)),
        Formula::Or(a, b) => Ok(Inversion::Pair(
            invert_unchecked(t, target, &Multiset::singleton(wrap(a)), 0)?,
            invert_unchecked(t, target, &Multiset::singleton(wrap(b)), 1)?,
        )),
        Formula::HeytImp(_, b) => Ok(Inversion::Single(invert_unchecked(
            t,
            target,
            &Multiset::singleton(wrap(b)),
            1,
        )?)),
        _ => Err(TransformError::Target(format!("`{target}` is not invertible"))),
    }
}

/// Replaces `target` by `repl` throughout `t`; where `target` is principal,
/// returns premise `side`.
pub(crate) fn invert_unchecked(t: &ProofTree, target: &Formula, repl: &Multiset, side: usize) -> Res<ProofTree> {
    let nd = node_of(t)?;
    let s = &nd.sequent;
    let concl = s.with_antecedent(replace(&s.antecedent, target, repl)?);
    let rule = nd.rule.rule;
    match rule {
        RuleId::LW => {
            let sigma = nd.rule.intro.as_ref().unwrap();
            match sigma.without(target) {
                Some(rest) => Ok(lw(nd.premises[0].clone(), &rest.union(repl))),
                None => Ok(lw(invert_unchecked(&nd.premises[0], target, repl, side)?, sigma)),
            }
        }
        RuleId::LAndN | RuleId::LOrN | RuleId::LHeytImpN if nd.rule.principal.as_ref() == Some(target) => {
            Ok(nd.premises[side].clone())
        }
        RuleId::RDynImp => {
            let p = invert_unchecked(&nd.premises[0], &Formula::nabla(target.clone()), &repl.nabla(1), side)?;
            Ok(rebuild(nd, concl, alloc::vec![p]))
        }
        RuleId::N => {
            let (Some(inner), Some(inner_repl)) = (target.unwrap_nabla(), repl.unwrap_nabla()) else {
                return internal("inversion target under N is not ∇-headed");
            };
            let p = invert_unchecked(&nd.premises[0], inner, &inner_repl, side)?;
            Ok(rebuild(nd, concl, alloc::vec![p]))
        }
        RuleId::Rw
        | RuleId::LAndN
        | RuleId::LOrN
        | RuleId::LDynImpN
        | RuleId::LHeytImpN
        | RuleId::RAnd
        | RuleId::ROr1
        | RuleId::ROr2
        | RuleId::RHeytImp => {
            let ps = nd
                .premises
                .iter()
                .map(|p| invert_unchecked(p, target, repl, side))
                .collect::<Res<Vec<_>>>()?;
            Ok(rebuild(nd, concl, ps))
        }
        _ => internal(format!("cannot invert through {}", rule.name())),
    }
}

/// From a proof of `Γ, A, A ⇒ Δ` builds one of `Γ, A ⇒ Δ` that is no
/// higher.
pub fn contract(t: &ProofTree, a: &Formula) -> Result<ProofTree, TransformError> {
    check_proof(t, CalculusId::ikd()).map_err(TransformError::InputRejected)?;
    if t.sequent().antecedent.count(a) < 2 {
        return Err(TransformError::Multiplicity(a.clone()));
    }
    contract_unchecked(t, a)
}

/// Contracts duplicates until the antecedent equals `target`, which must
/// contain one copy of everything removed.
pub fn contract_to(t: &ProofTree, target: &Multiset) -> Result<ProofTree, TransformError> {
    check_proof(t, CalculusId::ikd()).map_err(TransformError::InputRejected)?;
    contract_to_unchecked(t, target)
}

pub(crate) fn contract_to_unchecked(t: &ProofTree, target: &Multiset) -> Res<ProofTree> {
    let ant = &t.sequent().antecedent;
    let Some(extra) = ant.difference(target) else {
        return Err(TransformError::Shape(format!(
            "contraction target {target:?} is not inside `{}`",
            t.sequent()
        )));
    };
    let mut out = t.clone();
    for f in extra.iter() {
        if !target.contains(f) {
            return Err(TransformError::Shape(format!(
                "`{f}` would be removed entirely by contraction"
            )));
        }
        out = contract_unchecked(&out, f)?;
    }
    if &out.sequent().antecedent != target {
        return internal("contraction did not reach its target");
    }
    Ok(out)
}

pub(crate) fn contract_unchecked(t: &ProofTree, a: &Formula) -> Res<ProofTree> {
    let nd = node_of(t)?;
    let s = &nd.sequent;
    let Some(ant) = s.antecedent.without(a) else {
        return internal(format!("`{a}` missing from `{s}`"));
    };
    let concl = s.with_antecedent(ant);
    let rule = nd.rule.rule;
    let p = |i: usize| &nd.premises[i];
    if nd.rule.principal.as_ref() == Some(a) {
        let n = nd.rule.n.unwrap();
        match rule {
            RuleId::LAndN => {
                let (b, c) = components(a, n);
                let (b, c) = (b.nabla_n(n), c.nabla_n(n));
                let both = Multiset::from(alloc::vec![b.clone(), c.clone()]);
                let inv = invert_unchecked(p(0), a, &both, 0)?;
                let once = contract_unchecked(&contract_unchecked(&inv, &b)?, &c)?;
                return Ok(l_and_n(once, n, a.clone()));
            }
            RuleId::LOrN => {
                let (b, c) = components(a, n);
                let (b, c) = (b.nabla_n(n), c.nabla_n(n));
                let left = invert_unchecked(p(0), a, &Multiset::singleton(b.clone()), 0)?;
                let right = invert_unchecked(p(1), a, &Multiset::singleton(c.clone()), 1)?;
                return Ok(l_or_n(
                    contract_unchecked(&left, &b)?,
                    contract_unchecked(&right, &c)?,
                    n,
                    a.clone(),
                ));
            }
            RuleId::LDynImpN => {
                return Ok(l_dyn_imp_n(
                    contract_unchecked(p(0), a)?,
                    contract_unchecked(p(1), a)?,
                    n,
                    a.clone(),
                ));
            }
            RuleId::LHeytImpN => {
                let c = components(a, n).1.nabla_n(n);
                let right = invert_unchecked(p(1), a, &Multiset::singleton(c.clone()), 1)?;
                return Ok(l_heyt_imp_n(
                    contract_unchecked(p(0), a)?,
                    contract_unchecked(&right, &c)?,
                    n,
                    a.clone(),
                ));
            }
            _ => {}
        }
    }
    match rule {
        RuleId::LW => {
            let sigma = nd.rule.intro.as_ref().unwrap();
            match sigma.without(a) {
                Some(rest) => Ok(lw(p(0).clone(), &rest)),
                None => Ok(lw(contract_unchecked(p(0), a)?, sigma)),
            }
        }
        RuleId::RDynImp => {
            let q = contract_unchecked(p(0), &Formula::nabla(a.clone()))?;
            Ok(rebuild(nd, concl, alloc::vec![q]))
        }
        RuleId::N => {
            let Some(inner) = a.unwrap_nabla() else {
                return internal("contracted formula under N is not ∇-headed");
            };
            let q = contract_unchecked(p(0), inner)?;
            Ok(rebuild(nd, concl, alloc::vec![q]))
        }
        RuleId::Rw
        | RuleId::LAndN
        | RuleId::LOrN
        | RuleId::LDynImpN
        | RuleId::LHeytImpN
        | RuleId::RAnd
        | RuleId::ROr1
        | RuleId::ROr2
        | RuleId::RHeytImp => {
            let ps = nd
                .premises
                .iter()
                .map(|q| contract_unchecked(q, a))
                .collect::<Res<Vec<_>>>()?;
            Ok(rebuild(nd, concl, ps))
        }
        _ => internal(format!("cannot contract through {}", rule.name())),
    }
}
