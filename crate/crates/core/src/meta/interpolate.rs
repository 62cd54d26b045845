use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use super::{internal, node_of, MetaError, Res};
use crate::kernel::build::*;
use crate::kernel::derived::nabla_box_left;
use crate::kernel::{check_proof, CalculusId, ProofTree, RuleId};
use crate::search::{prove, SearchBudget, SearchOutcome, SearchReport};
use crate::syntax::{Formula, Multiset, Sequent};
use crate::transform::{deduction_export, deduction_import};

/// Which part of the antecedent split a principal formula belongs to.
/// `Left` is `Γ₁`, the part the interpolant is proved from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// How the interpolant of a node is assembled from those of its premises.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Construction {
    Atom,
    Top,
    Bot,
    /// The premise interpolant is kept.
    Passed,
    Conjunction,
    Disjunction,
    HeytingImplication,
    /// `⊤ → D`.
    Boxed,
    /// `∇D`.
    Nabla,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InterpolationStep {
    pub rule: RuleId,
    /// Side of the principal formula, for left rules.
    pub side: Option<Side>,
    pub construction: Construction,
}

/// `Γ₁ ⇒ C` and `Γ₂, C ⇒ Δ` for a split `Γ₁, Γ₂ ⇒ Δ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InterpolationResult {
    pub interpolant: Formula,
    pub left_proof: ProofTree,
    pub right_proof: ProofTree,
    /// One step per node of the input proof, in preorder.
    pub trace: Vec<InterpolationStep>,
}

/// Interpolates a cut-free iK_d proof. `left` lists the positions, in the
/// canonical antecedent order, of the occurrences that form `Γ₁`.
pub fn interpolate(t: &ProofTree, left: &[usize]) -> Result<InterpolationResult, MetaError> {
    check_proof(t, CalculusId::ikd()).map_err(MetaError::InputRejected)?;
    let s = t.sequent();
    let ant = s.antecedent.as_slice();
    let mut chosen = alloc::vec![false; ant.len()];
    for &i in left {
        match chosen.get_mut(i) {
            None => return Err(MetaError::InvalidSplit(format!("position {i} is past the antecedent"))),
            Some(true) => return Err(MetaError::InvalidSplit(format!("position {i} is repeated"))),
            Some(c) => *c = true,
        }
    }
    let pick = |side: bool| -> Multiset {
        ant.iter()
            .zip(&chosen)
            .filter(|(_, &c)| c == side)
            .map(|(f, _)| f.clone())
            .collect()
    };
    let (g1, g2) = (pick(true), pick(false));
    let mut trace = Vec::new();
    let piece = interp(t, &g1, &g2, &mut trace)?;
    let out = InterpolationResult {
        interpolant: piece.c,
        left_proof: piece.left,
        right_proof: piece.right,
        trace,
    };
    certify(&out, &g1, &g2, &s.succedent)?;
    Ok(out)
}

fn certify(r: &InterpolationResult, g1: &Multiset, g2: &Multiset, delta: &Option<Formula>) -> Res<()> {
    let c = &r.interpolant;
    if r.left_proof.sequent() != &Sequent::new(g1.clone(), Some(c.clone())) {
        return internal(format!("left proof ends in `{}`", r.left_proof.sequent()));
    }
    if r.right_proof.sequent() != &Sequent::new(g2.with(c.clone()), delta.clone()) {
        return internal(format!("right proof ends in `{}`", r.right_proof.sequent()));
    }
    for p in [&r.left_proof, &r.right_proof] {
        check_proof(p, CalculusId::ikd())
            .map_err(|e| MetaError::Internal(format!("interpolation proof rejected: {e}")))?;
    }
    let mut right = g2.atoms();
    right.extend(delta.iter().flat_map(Formula::atoms));
    let shared: BTreeSet<_> = g1.atoms().intersection(&right).cloned().collect();
    if !c.atoms().is_subset(&shared) {
        return internal(format!("interpolant `{c}` mentions atoms outside {shared:?}"));
    }
    Ok(())
}

struct Piece {
    c: Formula,
    left: ProofTree,
    right: ProofTree,
}

fn take(m: &Multiset, f: &Formula) -> Res<Multiset> {
    m.without(f)
        .ok_or_else(|| MetaError::Internal(format!("`{f}` missing from a split part")))
}

fn one(f: &Formula) -> Multiset {
    Multiset::singleton(f.clone())
}

/// `Γ₂, D, E ⇒ Δ` to `Γ₂, D∧E ⇒ Δ`.
fn join(t: ProofTree, c: &Formula) -> ProofTree {
    l_and_n(t, 0, c.clone())
}

/// `Γ₂ ⇒ D` and `Γ₂, E ⇒ Δ` to `Γ₂, D⊃E ⇒ Δ`.
fn heyting_right(d: &Piece, e: &Piece, c: &Formula) -> ProofTree {
    l_heyt_imp_n(lw(d.left.clone(), &one(c)), e.right.clone(), 0, c.clone())
}

fn interp(t: &ProofTree, g1: &Multiset, g2: &Multiset, trace: &mut Vec<InterpolationStep>) -> Res<Piece> {
    let nd = node_of(t)?;
    let rule = nd.rule.rule;
    let s = &nd.sequent;
    let principal = nd.rule.principal.clone();
    let side = principal
        .as_ref()
        .map(|p| if g1.contains(p) { Side::Left } else { Side::Right });
    let mut step = |construction: Construction| {
        trace.push(InterpolationStep {
            rule,
            side,
            construction,
        });
    };
    let k = nd.rule.n.unwrap_or(0);
    let prem = |i: usize| &nd.premises[i];
    let piece = match rule {
        RuleId::IdP => {
            let p = s.succedent.clone().unwrap();
            if g1.contains(&p) {
                step(Construction::Atom);
                Piece {
                    c: p.clone(),
                    left: id_p(p.clone()),
                    right: id_p(p),
                }
            } else {
                step(Construction::Top);
                Piece {
                    c: Formula::Top,
                    left: r_top(),
                    right: lw(id_p(p), &one(&Formula::Top)),
                }
            }
        }
        RuleId::LBot => {
            if g1.contains(&Formula::Bot) {
                step(Construction::Bot);
                Piece {
                    c: Formula::Bot,
                    left: rw(l_bot(), Formula::Bot),
                    right: l_bot(),
                }
            } else {
                step(Construction::Top);
                Piece {
                    c: Formula::Top,
                    left: r_top(),
                    right: lw(l_bot(), &one(&Formula::Top)),
                }
            }
        }
        RuleId::RTop => {
            step(Construction::Top);
            Piece {
                c: Formula::Top,
                left: r_top(),
                right: lw(r_top(), &one(&Formula::Top)),
            }
        }
        RuleId::LW => {
            step(Construction::Passed);
            let sigma = nd.rule.intro.as_ref().unwrap();
            let (mut s1, mut s2, mut r1) = (Multiset::new(), Multiset::new(), g1.clone());
            for f in sigma.iter() {
                if r1.remove(f) {
                    s1.insert(f.clone());
                } else {
                    s2.insert(f.clone());
                }
            }
            let r2 = g2
                .difference(&s2)
                .ok_or_else(|| MetaError::Internal("weakened formulas missing from the split".into()))?;
            let d = interp(prem(0), &r1, &r2, trace)?;
            Piece {
                c: d.c,
                left: lw(d.left, &s1),
                right: lw(d.right, &s2),
            }
        }
        RuleId::Rw => {
            step(Construction::Passed);
            let d = interp(prem(0), g1, g2, trace)?;
            Piece {
                c: d.c,
                left: d.left,
                right: rw(d.right, s.succedent.clone().unwrap()),
            }
        }
        RuleId::LAndN => {
            step(Construction::Passed);
            let p = principal.unwrap();
            let (a, b) = components(&p, k);
            let comps = one(&a.nabla_n(k)).with(b.nabla_n(k));
            if side == Some(Side::Left) {
                let d = interp(prem(0), &take(g1, &p)?.union(&comps), g2, trace)?;
                Piece {
                    c: d.c,
                    left: l_and_n(d.left, k, p),
                    right: d.right,
                }
            } else {
                let d = interp(prem(0), g1, &take(g2, &p)?.union(&comps), trace)?;
                Piece {
                    c: d.c,
                    left: d.left,
                    right: l_and_n(d.right, k, p),
                }
            }
        }
        RuleId::LOrN => {
            let p = principal.unwrap();
            let (a, b) = components(&p, k);
            let (an, bn) = (a.nabla_n(k), b.nabla_n(k));
            if side == Some(Side::Left) {
                step(Construction::Disjunction);
                let rest = take(g1, &p)?;
                let d = interp(prem(0), &rest.with(an), g2, trace)?;
                let e = interp(prem(1), &rest.with(bn), g2, trace)?;
                let c = Formula::or(d.c.clone(), e.c.clone());
                let left = l_or_n(r_or1(d.left, e.c.clone()), r_or2(e.left, d.c.clone()), k, p);
                let right = l_or_n(d.right, e.right, 0, c.clone());
                Piece { c, left, right }
            } else {
                step(Construction::Conjunction);
                let rest = take(g2, &p)?;
                let d = interp(prem(0), g1, &rest.with(an), trace)?;
                let e = interp(prem(1), g1, &rest.with(bn), trace)?;
                let c = Formula::and(d.c.clone(), e.c.clone());
                let right = l_or_n(lw(d.right, &one(&e.c)), lw(e.right, &one(&d.c)), k, p);
                Piece {
                    left: r_and(d.left, e.left),
                    right: join(right, &c),
                    c,
                }
            }
        }
        RuleId::LDynImpN | RuleId::LHeytImpN => {
            let p = principal.unwrap();
            let dynamic = rule == RuleId::LDynImpN;
            let (_, b) = components(&p, if dynamic { k + 1 } else { k });
            let bn = b.nabla_n(k);
            let rebuild = |l: ProofTree, r: ProofTree| {
                if dynamic {
                    l_dyn_imp_n(l, r, k, p.clone())
                } else {
                    l_heyt_imp_n(l, r, k, p.clone())
                }
            };
            // the right premise keeps the principal only for L→
            let kept = |m: &Multiset| if dynamic { Ok(m.clone()) } else { take(m, &p) };
            if side == Some(Side::Left) {
                step(Construction::HeytingImplication);
                let d = interp(prem(0), g2, g1, trace)?;
                let e = interp(prem(1), &kept(g1)?.with(bn), g2, trace)?;
                let c = Formula::heyt_imp(d.c.clone(), e.c.clone());
                let inner = rebuild(d.right.clone(), lw(e.left.clone(), &one(&d.c)));
                let left = r_heyt_imp(inner, d.c.clone());
                let right = heyting_right(
                    &Piece {
                        c: d.c,
                        left: d.left,
                        right: d.right,
                    },
                    &e,
                    &c,
                );
                Piece { c, left, right }
            } else {
                step(Construction::Conjunction);
                let d = interp(prem(0), g1, g2, trace)?;
                let e = interp(prem(1), g1, &kept(g2)?.with(bn), trace)?;
                let c = Formula::and(d.c.clone(), e.c.clone());
                let right = rebuild(lw(d.right, &one(&e.c)), lw(e.right, &one(&d.c)));
                Piece {
                    left: r_and(d.left, e.left),
                    right: join(right, &c),
                    c,
                }
            }
        }
        RuleId::RAnd => {
            step(Construction::Conjunction);
            let d = interp(prem(0), g1, g2, trace)?;
            let e = interp(prem(1), g1, g2, trace)?;
            let c = Formula::and(d.c.clone(), e.c.clone());
            let right = r_and(join(lw(d.right, &one(&e.c)), &c), join(lw(e.right, &one(&d.c)), &c));
            Piece {
                left: r_and(d.left, e.left),
                right,
                c,
            }
        }
        RuleId::ROr1 | RuleId::ROr2 => {
            step(Construction::Passed);
            let Some(Formula::Or(a, b)) = &s.succedent else {
                return internal("R∨ without a disjunction");
            };
            let d = interp(prem(0), g1, g2, trace)?;
            let right = if rule == RuleId::ROr1 {
                r_or1(d.right, (**b).clone())
            } else {
                r_or2(d.right, (**a).clone())
            };
            Piece {
                c: d.c,
                left: d.left,
                right,
            }
        }
        RuleId::RHeytImp => {
            step(Construction::Passed);
            let Some(Formula::HeytImp(a, _)) = &s.succedent else {
                return internal("R⊃ without an implication");
            };
            let d = interp(prem(0), g1, &g2.with((**a).clone()), trace)?;
            Piece {
                c: d.c,
                left: d.left,
                right: r_heyt_imp(d.right, (**a).clone()),
            }
        }
        RuleId::RDynImp => {
            step(Construction::Boxed);
            let Some(Formula::DynImp(a, _)) = &s.succedent else {
                return internal("R→ without an implication");
            };
            let a = (**a).clone();
            let d = interp(prem(0), &g1.nabla(1), &g2.nabla(1).with(a.clone()), trace)?;
            let c = Formula::boxed(d.c.clone());
            let left = r_dyn_imp(lw(d.left, &one(&Formula::Top)), g1.clone(), Formula::Top);
            let right = r_dyn_imp(nabla_box_left(d.right, &d.c), g2.with(c.clone()), a);
            Piece { c, left, right }
        }
        RuleId::N => {
            step(Construction::Nabla);
            let (Some(u1), Some(u2)) = (g1.unwrap_nabla(), g2.unwrap_nabla()) else {
                return internal("N over a non-∇ antecedent");
            };
            let d = interp(prem(0), &u1, &u2, trace)?;
            Piece {
                c: Formula::nabla(d.c),
                left: n(d.left),
                right: n(d.right),
            }
        }
        other => return internal(format!("{} in a cut-free iK_d proof", other.name())),
    };
    debug_assert_eq!(piece.left.sequent(), &Sequent::new(g1.clone(), Some(piece.c.clone())));
    debug_assert_eq!(piece.right.sequent(), &s.with_antecedent(g2.with(piece.c.clone())));
    Ok(piece)
}

/// The outcome of interpolating `A ⇒ B` found by search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormulaInterpolation {
    Interpolant(InterpolationResult),
    Exhausted(SearchReport),
}

/// Searches for a proof of `A ⇒ B` and interpolates it with `Γ₁ = {A}`.
pub fn interpolate_formula(a: &Formula, b: &Formula, budget: SearchBudget) -> Result<FormulaInterpolation, MetaError> {
    let goal = Sequent::new(Multiset::singleton(a.clone()), Some(b.clone()));
    match prove(&goal, CalculusId::ikd(), budget)? {
        SearchOutcome::Found(t) => Ok(FormulaInterpolation::Interpolant(interpolate(&t, &[0])?)),
        SearchOutcome::Exhausted(r) => Ok(FormulaInterpolation::Exhausted(r)),
    }
}

/// An interpolant `C` for a derivation of `⇒ B` from hypotheses `⇒ A`,
/// with derivations of `⇒ C` from `⇒ A` and of `⇒ B` from `⇒ C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeductiveInterpolation {
    pub interpolant: Formula,
    /// The variants of `A` the exported proof depends on.
    pub sigma: Multiset,
    pub from_assumption: ProofTree,
    pub to_conclusion: ProofTree,
}

pub fn deductive_interpolant(a: &Formula, b: &Formula, t: &ProofTree) -> Result<DeductiveInterpolation, MetaError> {
    let want = Sequent::theorem(b.clone());
    if t.sequent() != &want {
        return Err(MetaError::Shape(t.sequent().clone()));
    }
    let exported = deduction_export(t, a)?;
    let left: Vec<usize> = (0..exported.sigma.len()).collect();
    let r = interpolate(&exported.proof, &left)?;
    let c = r.interpolant;
    let from_assumption = deduction_import(a, &exported.sigma, &r.left_proof)?;
    let to_conclusion = deduction_import(&c, &Multiset::singleton(c.clone()), &r.right_proof)?;
    let hyps = CalculusId::ikd().with_cut(true).with_hypotheses(true);
    for (p, s) in [(&from_assumption, Sequent::theorem(c.clone())), (&to_conclusion, want)] {
        if p.sequent() != &s {
            return internal(format!("witness ends in `{}` instead of `{s}`", p.sequent()));
        }
        check_proof(p, hyps).map_err(|e| MetaError::Internal(format!("witness rejected: {e}")))?;
    }
    Ok(DeductiveInterpolation {
        interpolant: c,
        sigma: exported.sigma,
        from_assumption,
        to_conclusion,
    })
}
