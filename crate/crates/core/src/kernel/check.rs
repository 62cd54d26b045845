use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use super::rule::{RuleId, RuleInstance};
use super::{Base, CalculusId, ProofNode, ProofTree};
use crate::syntax::{Connective, Formula, Multiset, Sequent};

/// The first schema constraint an instance fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation(pub String);

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl core::error::Error for Violation {}

/// A failing node, addressed by premise indices from the root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofError {
    pub path: Vec<usize>,
    pub violation: Violation,
}

impl fmt::Display for ProofError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("at node [")?;
        for (i, step) in self.path.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            write!(f, "{step}")?;
        }
        write!(f, "]: {}", self.violation)
    }
}

impl core::error::Error for ProofError {}

macro_rules! ensure {
    ($cond:expr, $($arg:tt)*) => {
        if !$cond {
            return Err(Violation(format!($($arg)*)));
        }
    };
}

fn rule_in_calculus(rule: RuleId, calc: CalculusId) -> bool {
    use RuleId::*;
    let ikd = matches!(calc.base, Base::Ikd | Base::Ikds);
    let heyting = matches!(calc.base, Base::Ikd | Base::Stlnh);
    match rule {
        LBot | RTop | Rw | RAnd | ROr1 | ROr2 | RDynImp | N => true,
        RHeytImp => heyting,
        Cut => calc.allow_cut,
        IdP | LW | LAndN | LOrN | LDynImpN => ikd,
        LHeytImpN => ikd && heyting,
        Id | Lw | Lc | LAnd1 | LAnd2 | LOr | LDynImp => !ikd,
        LHeytImp => !ikd && heyting,
    }
}

fn check_fields(inst: &RuleInstance, calc: CalculusId) -> Result<(), Violation> {
    let r = inst.rule;
    let name = r.name();
    ensure!(
        inst.n.is_some() == r.needs_n(),
        "{name}: exponent field {}",
        presence(r.needs_n())
    );
    ensure!(
        inst.principal.is_some() == r.needs_principal(),
        "{name}: principal field {}",
        presence(r.needs_principal())
    );
    ensure!(
        inst.intro.is_some() == r.needs_intro(),
        "{name}: intro field {}",
        presence(r.needs_intro())
    );
    let is_cut = r == RuleId::Cut;
    ensure!(
        inst.cut_formula.is_some() == is_cut,
        "{name}: cut_formula field {}",
        presence(is_cut)
    );
    ensure!(
        is_cut || inst.cut_exponent.is_none(),
        "{name}: cut_exponent field must be absent"
    );
    if is_cut && matches!(calc.base, Base::Stlnh | Base::Stln) {
        ensure!(inst.exponent() == 0, "Cut: exponent must be 0 in an STL calculus");
    }
    Ok(())
}

fn presence(required: bool) -> &'static str {
    if required {
        "is required"
    } else {
        "must be absent"
    }
}

fn arity(rule: RuleId, premises: &[Sequent]) -> Result<(), Violation> {
    let k = rule.arity();
    let noun = match k {
        0 => "no premises",
        1 => "one premise",
        _ => "two premises",
    };
    ensure!(premises.len() == k, "{rule} requires {noun}");
    Ok(())
}

fn same(actual: &Sequent, expected: &Sequent, what: &str) -> Result<(), Violation> {
    ensure!(actual == expected, "{what}: expected `{expected}`, found `{actual}`");
    Ok(())
}

/// Splits the principal `∇ⁿ(A ∘ B)` and checks it has the connective.
fn split_principal(p: &Formula, n: usize, conn: Connective, rule: RuleId) -> Result<(Formula, Formula), Violation> {
    let core = p.peel_nabla(n);
    let parts = core.and_then(|c| c.as_binary()).filter(|(c, _, _)| *c == conn);
    match parts {
        Some((_, a, b)) => Ok((a.clone(), b.clone())),
        None => Err(Violation(format!(
            "{rule}: principal `{p}` is not of the required shape with exponent {n}"
        ))),
    }
}

fn remove_principal(concl: &Sequent, p: &Formula, rule: RuleId) -> Result<Multiset, Violation> {
    concl
        .antecedent
        .without(p)
        .ok_or_else(|| Violation(format!("{rule}: principal `{p}` not in the conclusion antecedent")))
}

fn succ_conn(concl: &Sequent, conn: Connective, rule: RuleId) -> Result<(Formula, Formula), Violation> {
    match concl.succedent.as_ref().and_then(|s| s.as_binary()) {
        Some((c, a, b)) if c == conn => Ok((a.clone(), b.clone())),
        _ => Err(Violation(format!("{rule}: succedent has the wrong shape"))),
    }
}

/// Checks one inference against the schema of `inst` in `calc`.
pub fn check_instance(
    concl: &Sequent,
    inst: &RuleInstance,
    premises: &[Sequent],
    calc: CalculusId,
) -> Result<(), Violation> {
    use RuleId::*;
    let rule = inst.rule;
    ensure!(rule_in_calculus(rule, calc), "{rule} is not a rule of {calc}");
    check_fields(inst, calc)?;
    arity(rule, premises)?;
    let gamma = &concl.antecedent;
    let delta = &concl.succedent;
    match rule {
        IdP => {
            ensure!(
                gamma.len() == 1 && gamma.as_slice()[0].is_atom() && delta.as_ref() == gamma.iter().next(),
                "IdP: conclusion must be `p |- p` for an atom p"
            );
        }
        Id => {
            ensure!(
                gamma.len() == 1 && delta.as_ref() == gamma.iter().next(),
                "Id: conclusion must be `A |- A`"
            );
        }
        LBot => {
            ensure!(
                *gamma == Multiset::singleton(Formula::Bot) && delta.is_none(),
                "LBot: conclusion must be `F |-`"
            );
        }
        RTop => {
            ensure!(
                gamma.is_empty() && *delta == Some(Formula::Top),
                "RTop: conclusion must be `|- T`"
            );
        }
        LW | Lw => {
            let sigma = inst.intro.as_ref().unwrap();
            if rule == Lw {
                ensure!(sigma.len() == 1, "Lw: exactly one weakened formula");
            }
            let rest = gamma
                .difference(sigma)
                .ok_or_else(|| Violation(format!("{rule}: weakened formulas not in the conclusion")))?;
            same(&premises[0], &concl.with_antecedent(rest), "premise")?;
        }
        Rw => {
            ensure!(delta.is_some(), "Rw: conclusion succedent must be nonempty");
            same(&premises[0], &concl.with_succedent(None), "premise")?;
        }
        Lc => {
            let a = inst.principal.as_ref().unwrap();
            ensure!(
                gamma.contains(a),
                "Lc: principal `{a}` not in the conclusion antecedent"
            );
            same(&premises[0], &concl.with_antecedent(gamma.with(a.clone())), "premise")?;
        }
        LAndN | LOrN | LHeytImpN => {
            let n = inst.n.unwrap();
            let p = inst.principal.as_ref().unwrap();
            let conn = match rule {
                LAndN => Connective::And,
                LOrN => Connective::Or,
                _ => Connective::HeytImp,
            };
            let (a, b) = split_principal(p, n, conn, rule)?;
            let rest = remove_principal(concl, p, rule)?;
            let (an, bn) = (a.nabla_n(n), b.nabla_n(n));
            match rule {
                LAndN => same(&premises[0], &concl.with_antecedent(rest.with(an).with(bn)), "premise")?,
                LOrN => {
                    same(&premises[0], &concl.with_antecedent(rest.with(an)), "left premise")?;
                    same(&premises[1], &concl.with_antecedent(rest.with(bn)), "right premise")?;
                }
                _ => {
                    same(&premises[0], &Sequent::new(gamma.clone(), Some(an)), "left premise")?;
                    same(&premises[1], &concl.with_antecedent(rest.with(bn)), "right premise")?;
                }
            }
        }
        LDynImpN => {
            let n = inst.n.unwrap();
            let p = inst.principal.as_ref().unwrap();
            let (a, b) = split_principal(p, n + 1, Connective::DynImp, rule)?;
            remove_principal(concl, p, rule)?;
            same(
                &premises[0],
                &Sequent::new(gamma.clone(), Some(a.nabla_n(n))),
                "left premise",
            )?;
            same(
                &premises[1],
                &concl.with_antecedent(gamma.with(b.nabla_n(n))),
                "right premise",
            )?;
        }
        LAnd1 | LAnd2 => {
            let p = inst.principal.as_ref().unwrap();
            let (a, b) = split_principal(p, 0, Connective::And, rule)?;
            let rest = remove_principal(concl, p, rule)?;
            let comp = if rule == LAnd1 { a } else { b };
            same(&premises[0], &concl.with_antecedent(rest.with(comp)), "premise")?;
        }
        LOr => {
            let p = inst.principal.as_ref().unwrap();
            let (a, b) = split_principal(p, 0, Connective::Or, rule)?;
            let rest = remove_principal(concl, p, rule)?;
            same(&premises[0], &concl.with_antecedent(rest.with(a)), "left premise")?;
            same(&premises[1], &concl.with_antecedent(rest.with(b)), "right premise")?;
        }
        LDynImp | LHeytImp => {
            let p = inst.principal.as_ref().unwrap();
            let (depth, conn) = if rule == LDynImp {
                (1, Connective::DynImp)
            } else {
                (0, Connective::HeytImp)
            };
            let (a, b) = split_principal(p, depth, conn, rule)?;
            let rest = remove_principal(concl, p, rule)?;
            same(&premises[0], &Sequent::new(rest.clone(), Some(a)), "left premise")?;
            same(&premises[1], &concl.with_antecedent(rest.with(b)), "right premise")?;
        }
        RAnd => {
            let (a, b) = succ_conn(concl, Connective::And, rule)?;
            same(&premises[0], &concl.with_succedent(Some(a)), "left premise")?;
            same(&premises[1], &concl.with_succedent(Some(b)), "right premise")?;
        }
        ROr1 | ROr2 => {
            let (a, b) = succ_conn(concl, Connective::Or, rule)?;
            let pick = if rule == ROr1 { a } else { b };
            same(&premises[0], &concl.with_succedent(Some(pick)), "premise")?;
        }
        RDynImp => {
            let (a, b) = succ_conn(concl, Connective::DynImp, rule)?;
            same(&premises[0], &Sequent::new(gamma.nabla(1).with(a), Some(b)), "premise")?;
        }
        RHeytImp => {
            let (a, b) = succ_conn(concl, Connective::HeytImp, rule)?;
            same(&premises[0], &Sequent::new(gamma.with(a), Some(b)), "premise")?;
        }
        N => {
            let inner = gamma
                .unwrap_nabla()
                .ok_or_else(|| Violation("N: every antecedent formula must be ∇-headed".into()))?;
            let succ = match delta {
                None => None,
                Some(d) => Some(
                    d.unwrap_nabla()
                        .cloned()
                        .ok_or_else(|| Violation("N: succedent must be ∇-headed".into()))?,
                ),
            };
            same(&premises[0], &Sequent::new(inner, succ), "premise")?;
        }
        Cut => {
            let a = inst.cut_formula.as_ref().unwrap();
            let k = inst.exponent();
            let (left, right) = (&premises[0], &premises[1]);
            ensure!(left.succedent.as_ref() == Some(a), "Cut: left premise must prove `{a}`");
            let target = a.clone().nabla_n(k);
            let phi = right
                .antecedent
                .without(&target)
                .ok_or_else(|| Violation(format!("Cut: right premise lacks `{target}`")))?;
            let expected = Sequent::new(phi.union(&left.antecedent.nabla(k)), right.succedent.clone());
            same(concl, &expected, "conclusion")?;
        }
    }
    Ok(())
}

/// Checks every node of `t`, plus hypothesis and language restrictions.
pub fn check_proof(t: &ProofTree, calc: CalculusId) -> Result<(), ProofError> {
    let mut path = Vec::new();
    let mut seen = BTreeSet::new();
    check_rec(t, calc, &mut path, &mut seen)
}

/// `seen` holds shared nodes already verified, so DAG-shaped proofs are
/// checked in time linear in their distinct nodes.
fn check_rec(
    t: &ProofTree,
    calc: CalculusId,
    path: &mut Vec<usize>,
    seen: &mut BTreeSet<*const ProofNode>,
) -> Result<(), ProofError> {
    let fail = |path: &Vec<usize>, msg: String| ProofError {
        path: path.clone(),
        violation: Violation(msg),
    };
    if !calc.base.allows_heyting() && !t.sequent().is_heyting_free() {
        return Err(fail(
            path,
            format!("`{}` mentions ⊃, which {calc} excludes", t.sequent()),
        ));
    }
    match t {
        ProofTree::Hypothesis(s) => {
            if !calc.allow_hypotheses {
                return Err(fail(path, format!("hypothesis `{s}` not permitted")));
            }
            Ok(())
        }
        ProofTree::Node(node) => {
            if seen.contains(&Arc::as_ptr(node)) {
                return Ok(());
            }
            if !calc.base.allows_heyting() {
                let mentions = node
                    .rule
                    .principal
                    .iter()
                    .chain(node.rule.cut_formula.iter())
                    .chain(node.rule.intro.iter().flat_map(|m| m.iter()))
                    .any(|f| !f.is_heyting_free());
                if mentions {
                    return Err(fail(path, format!("rule data mentions ⊃, which {calc} excludes")));
                }
            }
            let prem: Vec<Sequent> = node.premises.iter().map(|p| p.sequent().clone()).collect();
            check_instance(&node.sequent, &node.rule, &prem, calc).map_err(|v| ProofError {
                path: path.clone(),
                violation: v,
            })?;
            for (i, p) in node.premises.iter().enumerate() {
                path.push(i);
                check_rec(p, calc, path, seen)?;
                path.pop();
            }
            seen.insert(Arc::as_ptr(node));
            Ok(())
        }
    }
}
