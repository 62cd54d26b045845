use alloc::vec;
use alloc::vec::Vec;

use super::rule::{RuleId, RuleInstance};
use super::{Base, CalculusId};
use crate::syntax::{Formula, Multiset, Sequent};

/// Every backward application of a rule to `goal`, with its premises.
///
/// Weakening removes one formula at a time. For the STL calculi,
/// contraction and cut are left out, since they admit infinitely many
/// backward instances.
pub fn applicable_instances(goal: &Sequent, calc: CalculusId) -> Vec<(RuleInstance, Vec<Sequent>)> {
    let mut out = Vec::new();
    let gamma = &goal.antecedent;
    let delta = &goal.succedent;
    let cut_free_family = calc.base.is_cut_free_family();
    let heyting = calc.base.allows_heyting();

    if gamma.len() == 1 && delta.as_ref() == gamma.iter().next() {
        let f = &gamma.as_slice()[0];
        if cut_free_family && f.is_atom() {
            out.push((RuleInstance::bare(RuleId::IdP), vec![]));
        } else if !cut_free_family {
            out.push((RuleInstance::bare(RuleId::Id), vec![]));
        }
    }
    if *gamma == Multiset::singleton(Formula::Bot) && delta.is_none() {
        out.push((RuleInstance::bare(RuleId::LBot), vec![]));
    }
    if gamma.is_empty() && *delta == Some(Formula::Top) {
        out.push((RuleInstance::bare(RuleId::RTop), vec![]));
    }

    for f in gamma.distinct() {
        let rest = gamma.without(f).unwrap();
        let with_rest =
            |extra: &[Formula]| goal.with_antecedent(extra.iter().fold(rest.clone(), |m, g| m.with(g.clone())));
        let s = f.strip_nabla();
        let n = s.depth;
        if cut_free_family {
            match &s.core {
                Formula::And(a, b) => out.push((
                    RuleInstance::left_n(RuleId::LAndN, n, f.clone()),
                    vec![with_rest(&[(**a).clone().nabla_n(n), (**b).clone().nabla_n(n)])],
                )),
                Formula::Or(a, b) => out.push((
                    RuleInstance::left_n(RuleId::LOrN, n, f.clone()),
                    vec![
                        with_rest(&[(**a).clone().nabla_n(n)]),
                        with_rest(&[(**b).clone().nabla_n(n)]),
                    ],
                )),
                Formula::HeytImp(a, b) if heyting => out.push((
                    RuleInstance::left_n(RuleId::LHeytImpN, n, f.clone()),
                    vec![
                        Sequent::new(gamma.clone(), Some((**a).clone().nabla_n(n))),
                        with_rest(&[(**b).clone().nabla_n(n)]),
                    ],
                )),
                Formula::DynImp(a, b) if n >= 1 => out.push((
                    RuleInstance::left_n(RuleId::LDynImpN, n - 1, f.clone()),
                    vec![
                        Sequent::new(gamma.clone(), Some((**a).clone().nabla_n(n - 1))),
                        goal.with_antecedent(gamma.with((**b).clone().nabla_n(n - 1))),
                    ],
                )),
                _ => {}
            }
        } else {
            match f {
                Formula::And(a, b) => {
                    out.push((
                        RuleInstance::with_principal(RuleId::LAnd1, f.clone()),
                        vec![with_rest(&[(**a).clone()])],
                    ));
                    out.push((
                        RuleInstance::with_principal(RuleId::LAnd2, f.clone()),
                        vec![with_rest(&[(**b).clone()])],
                    ));
                }
                Formula::Or(a, b) => out.push((
                    RuleInstance::with_principal(RuleId::LOr, f.clone()),
                    vec![with_rest(&[(**a).clone()]), with_rest(&[(**b).clone()])],
                )),
                Formula::HeytImp(a, b) if heyting => out.push((
                    RuleInstance::with_principal(RuleId::LHeytImp, f.clone()),
                    vec![
                        Sequent::new(rest.clone(), Some((**a).clone())),
                        with_rest(&[(**b).clone()]),
                    ],
                )),
                Formula::Nabla(inner) => {
                    if let Formula::DynImp(a, b) = &**inner {
                        out.push((
                            RuleInstance::with_principal(RuleId::LDynImp, f.clone()),
                            vec![
                                Sequent::new(rest.clone(), Some((**a).clone())),
                                with_rest(&[(**b).clone()]),
                            ],
                        ));
                    }
                }
                _ => {}
            }
        }
    }

    match delta {
        Some(Formula::And(a, b)) => out.push((
            RuleInstance::bare(RuleId::RAnd),
            vec![
                goal.with_succedent(Some((**a).clone())),
                goal.with_succedent(Some((**b).clone())),
            ],
        )),
        Some(Formula::Or(a, b)) => {
            out.push((
                RuleInstance::bare(RuleId::ROr1),
                vec![goal.with_succedent(Some((**a).clone()))],
            ));
            out.push((
                RuleInstance::bare(RuleId::ROr2),
                vec![goal.with_succedent(Some((**b).clone()))],
            ));
        }
        Some(Formula::DynImp(a, b)) => out.push((
            RuleInstance::bare(RuleId::RDynImp),
            vec![Sequent::new(gamma.nabla(1).with((**a).clone()), Some((**b).clone()))],
        )),
        Some(Formula::HeytImp(a, b)) if heyting => out.push((
            RuleInstance::bare(RuleId::RHeytImp),
            vec![Sequent::new(gamma.with((**a).clone()), Some((**b).clone()))],
        )),
        _ => {}
    }

    if let Some(inner) = gamma.unwrap_nabla() {
        let succ = match delta {
            None => Some(None),
            Some(d) => d.unwrap_nabla().map(|x| Some(x.clone())),
        };
        if let Some(succ) = succ {
            out.push((RuleInstance::bare(RuleId::N), vec![Sequent::new(inner, succ)]));
        }
    }

    for f in gamma.distinct() {
        let premise = goal.with_antecedent(gamma.without(f).unwrap());
        let inst = if cut_free_family {
            RuleInstance::lw(Multiset::singleton(f.clone()))
        } else {
            RuleInstance::stl_lw(f.clone())
        };
        out.push((inst, vec![premise]));
    }

    if delta.is_some() {
        out.push((RuleInstance::bare(RuleId::Rw), vec![goal.with_succedent(None)]));
    }

    if calc.base == Base::Stln || calc.base == Base::Ikds {
        out.retain(|(i, _)| !i.rule.is_heyting_rule());
    }
    out
}
