use alloc::sync::Arc;
use alloc::vec::Vec;

use super::rule::{RuleId, RuleInstance};
use crate::syntax::{Formula, Multiset, Sequent};

/// A proof tree. Nodes are shared, so transformations that reuse a
/// subproof several times do not copy it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProofTree {
    Hypothesis(Sequent),
    Node(Arc<ProofNode>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofNode {
    pub sequent: Sequent,
    pub rule: RuleInstance,
    pub premises: Vec<ProofTree>,
    height: usize,
}

impl ProofNode {
    pub fn height(&self) -> usize {
        self.height
    }
}

impl ProofTree {
    /// Assembles a node. No checking happens here; see `check_proof`.
    pub fn node(sequent: Sequent, rule: RuleInstance, premises: Vec<ProofTree>) -> ProofTree {
        let height = premises.iter().map(|p| p.height() + 1).max().unwrap_or(0);
        ProofTree::Node(Arc::new(ProofNode {
            sequent,
            rule,
            premises,
            height,
        }))
    }

    pub fn sequent(&self) -> &Sequent {
        match self {
            ProofTree::Hypothesis(s) => s,
            ProofTree::Node(n) => &n.sequent,
        }
    }

    pub fn height(&self) -> usize {
        match self {
            ProofTree::Hypothesis(_) => 0,
            ProofTree::Node(n) => n.height,
        }
    }

    pub fn as_node(&self) -> Option<&ProofNode> {
        match self {
            ProofTree::Hypothesis(_) => None,
            ProofTree::Node(n) => Some(n),
        }
    }

    pub fn rule(&self) -> Option<&RuleInstance> {
        self.as_node().map(|n| &n.rule)
    }

    pub fn rule_id(&self) -> Option<RuleId> {
        self.rule().map(|r| r.rule)
    }

    pub fn premises(&self) -> &[ProofTree] {
        match self {
            ProofTree::Hypothesis(_) => &[],
            ProofTree::Node(n) => &n.premises,
        }
    }

    pub fn premise(&self, i: usize) -> &ProofTree {
        &self.premises()[i]
    }

    /// Number of nodes, counting shared subtrees once per occurrence.
    pub fn size(&self) -> usize {
        1 + self.premises().iter().map(ProofTree::size).sum::<usize>()
    }

    /// True if some node satisfies `pred`.
    pub fn any(&self, pred: &mut impl FnMut(&ProofTree) -> bool) -> bool {
        pred(self) || self.premises().iter().any(|p| p.any(pred))
    }

    pub fn contains_rule(&self, rule: RuleId) -> bool {
        self.any(&mut |t| t.rule_id() == Some(rule))
    }

    pub fn is_cut_free(&self) -> bool {
        !self.contains_rule(RuleId::Cut)
    }

    pub fn has_hypotheses(&self) -> bool {
        self.any(&mut |t| matches!(t, ProofTree::Hypothesis(_)))
    }

    pub fn uses_heyting_rule(&self) -> bool {
        self.any(&mut |t| t.rule_id().is_some_and(RuleId::is_heyting_rule))
    }

    pub fn mentions_heyting(&self) -> bool {
        self.any(&mut |t| !t.sequent().is_heyting_free())
    }

    /// Every hypothesis sequent, left to right.
    pub fn hypotheses(&self) -> Vec<&Sequent> {
        let mut out = Vec::new();
        self.collect_hypotheses(&mut out);
        out
    }

    fn collect_hypotheses<'a>(&'a self, out: &mut Vec<&'a Sequent>) {
        match self {
            ProofTree::Hypothesis(s) => out.push(s),
            ProofTree::Node(n) => n.premises.iter().for_each(|p| p.collect_hypotheses(out)),
        }
    }
}

/// Shorthand constructors for the rules of both calculi. They compute the
/// conclusion from the premises and trust the caller about side conditions;
/// everything they build is meant to pass `check_proof`.
pub mod build {
    use super::*;

    pub fn id_p(p: Formula) -> ProofTree {
        ProofTree::node(
            Sequent::new(Multiset::singleton(p.clone()), Some(p)),
            RuleInstance::bare(RuleId::IdP),
            Vec::new(),
        )
    }

    pub fn l_bot() -> ProofTree {
        ProofTree::node(
            Sequent::new(Multiset::singleton(Formula::Bot), None),
            RuleInstance::bare(RuleId::LBot),
            Vec::new(),
        )
    }

    pub fn r_top() -> ProofTree {
        ProofTree::node(
            Sequent::theorem(Formula::Top),
            RuleInstance::bare(RuleId::RTop),
            Vec::new(),
        )
    }

    /// `LW`; returns the premise unchanged when `sigma` is empty.
    pub fn lw(premise: ProofTree, sigma: &Multiset) -> ProofTree {
        if sigma.is_empty() {
            return premise;
        }
        let s = premise.sequent();
        let concl = s.with_antecedent(s.antecedent.union(sigma));
        ProofTree::node(concl, RuleInstance::lw(sigma.clone()), alloc::vec![premise])
    }

    /// Weakens up to `target`, which must contain the premise antecedent.
    pub fn lw_to(premise: ProofTree, target: &Multiset) -> ProofTree {
        let extra = target
            .difference(&premise.sequent().antecedent)
            .expect("weakening target must contain the premise antecedent");
        lw(premise, &extra)
    }

    pub fn rw(premise: ProofTree, f: Formula) -> ProofTree {
        let concl = premise.sequent().with_succedent(Some(f));
        ProofTree::node(concl, RuleInstance::bare(RuleId::Rw), alloc::vec![premise])
    }

    /// `L∧ⁿ` with the given principal, whose components sit in the premise.
    pub fn l_and_n(premise: ProofTree, n: usize, principal: Formula) -> ProofTree {
        let (a, b) = components(&principal, n);
        let s = premise.sequent();
        let ant = s
            .antecedent
            .without(&a.nabla_n(n))
            .and_then(|m| m.without(&b.nabla_n(n)))
            .expect("L∧ premise lacks its components")
            .with(principal.clone());
        ProofTree::node(
            s.with_antecedent(ant),
            RuleInstance::left_n(RuleId::LAndN, n, principal),
            alloc::vec![premise],
        )
    }

    pub fn l_or_n(left: ProofTree, right: ProofTree, n: usize, principal: Formula) -> ProofTree {
        let (a, _) = components(&principal, n);
        let s = left.sequent();
        let ant = s
            .antecedent
            .without(&a.nabla_n(n))
            .expect("L∨ premise lacks its component")
            .with(principal.clone());
        ProofTree::node(
            s.with_antecedent(ant),
            RuleInstance::left_n(RuleId::LOrN, n, principal),
            alloc::vec![left, right],
        )
    }

    /// `L→ⁿ`; the principal `∇ⁿ⁺¹(A→B)` stays in both premises.
    pub fn l_dyn_imp_n(left: ProofTree, right: ProofTree, n: usize, principal: Formula) -> ProofTree {
        let concl = right.sequent().with_antecedent(left.sequent().antecedent.clone());
        ProofTree::node(
            concl,
            RuleInstance::left_n(RuleId::LDynImpN, n, principal),
            alloc::vec![left, right],
        )
    }

    /// `L⊃ⁿ`; the conclusion antecedent is that of the left premise.
    pub fn l_heyt_imp_n(left: ProofTree, right: ProofTree, n: usize, principal: Formula) -> ProofTree {
        let concl = right.sequent().with_antecedent(left.sequent().antecedent.clone());
        ProofTree::node(
            concl,
            RuleInstance::left_n(RuleId::LHeytImpN, n, principal),
            alloc::vec![left, right],
        )
    }

    pub fn r_and(left: ProofTree, right: ProofTree) -> ProofTree {
        let a = left.sequent().succedent.clone().expect("R∧ needs succedents");
        let b = right.sequent().succedent.clone().expect("R∧ needs succedents");
        let concl = left.sequent().with_succedent(Some(Formula::and(a, b)));
        ProofTree::node(concl, RuleInstance::bare(RuleId::RAnd), alloc::vec![left, right])
    }

    pub fn r_or1(premise: ProofTree, other: Formula) -> ProofTree {
        let a = premise.sequent().succedent.clone().expect("R∨ needs a succedent");
        let concl = premise.sequent().with_succedent(Some(Formula::or(a, other)));
        ProofTree::node(concl, RuleInstance::bare(RuleId::ROr1), alloc::vec![premise])
    }

    pub fn r_or2(premise: ProofTree, other: Formula) -> ProofTree {
        let b = premise.sequent().succedent.clone().expect("R∨ needs a succedent");
        let concl = premise.sequent().with_succedent(Some(Formula::or(other, b)));
        ProofTree::node(concl, RuleInstance::bare(RuleId::ROr2), alloc::vec![premise])
    }

    /// `R→` from a premise `∇Γ, A ⇒ B` with the context `Γ` given.
    pub fn r_dyn_imp(premise: ProofTree, gamma: Multiset, a: Formula) -> ProofTree {
        let b = premise.sequent().succedent.clone().expect("R→ needs a succedent");
        ProofTree::node(
            Sequent::new(gamma, Some(Formula::dyn_imp(a, b))),
            RuleInstance::bare(RuleId::RDynImp),
            alloc::vec![premise],
        )
    }

    /// `R⊃` discharging `a` from the premise antecedent.
    pub fn r_heyt_imp(premise: ProofTree, a: Formula) -> ProofTree {
        let s = premise.sequent();
        let b = s.succedent.clone().expect("R⊃ needs a succedent");
        let gamma = s.antecedent.without(&a).expect("R⊃ premise lacks the antecedent");
        ProofTree::node(
            Sequent::new(gamma, Some(Formula::heyt_imp(a, b))),
            RuleInstance::bare(RuleId::RHeytImp),
            alloc::vec![premise],
        )
    }

    pub fn n(premise: ProofTree) -> ProofTree {
        let s = premise.sequent();
        let concl = Sequent::new(s.antecedent.nabla(1), s.succedent.clone().map(Formula::nabla));
        ProofTree::node(concl, RuleInstance::bare(RuleId::N), alloc::vec![premise])
    }

    pub fn n_times(premise: ProofTree, k: usize) -> ProofTree {
        (0..k).fold(premise, |t, _| n(t))
    }

    /// Cut with exponent: `Π ⇒ A` and `Φ, ∇ⁿA ⇒ Λ` give `Φ, ∇ⁿΠ ⇒ Λ`.
    pub fn cut(left: ProofTree, right: ProofTree, exponent: usize) -> ProofTree {
        let a = left.sequent().succedent.clone().expect("cut needs a left succedent");
        let phi = right
            .sequent()
            .antecedent
            .without(&a.clone().nabla_n(exponent))
            .expect("cut formula missing on the right");
        let concl = right
            .sequent()
            .with_antecedent(phi.union(&left.sequent().antecedent.nabla(exponent)));
        ProofTree::node(concl, RuleInstance::cut(a, exponent), alloc::vec![left, right])
    }

    pub fn hypothesis(s: Sequent) -> ProofTree {
        ProofTree::Hypothesis(s)
    }

    // STL rules.

    pub fn id(a: Formula) -> ProofTree {
        ProofTree::node(
            Sequent::new(Multiset::singleton(a.clone()), Some(a)),
            RuleInstance::bare(RuleId::Id),
            Vec::new(),
        )
    }

    pub fn stl_lw(premise: ProofTree, f: Formula) -> ProofTree {
        let s = premise.sequent();
        let concl = s.with_antecedent(s.antecedent.with(f.clone()));
        ProofTree::node(concl, RuleInstance::stl_lw(f), alloc::vec![premise])
    }

    /// Repeated single-formula `Lw`.
    pub fn stl_lw_all(premise: ProofTree, sigma: &Multiset) -> ProofTree {
        sigma.iter().fold(premise, |t, f| stl_lw(t, f.clone()))
    }

    pub fn lc(premise: ProofTree, a: Formula) -> ProofTree {
        let s = premise.sequent();
        let ant = s.antecedent.without(&a).expect("Lc needs two copies");
        ProofTree::node(
            s.with_antecedent(ant),
            RuleInstance::with_principal(RuleId::Lc, a),
            alloc::vec![premise],
        )
    }

    /// `L∧₁` (`first = true`) or `L∧₂` turning the component into `principal`.
    pub fn l_and_i(premise: ProofTree, principal: Formula, first: bool) -> ProofTree {
        let (a, b) = components(&principal, 0);
        let comp = if first { a } else { b };
        let s = premise.sequent();
        let ant = s
            .antecedent
            .without(&comp)
            .expect("L∧ᵢ premise lacks its component")
            .with(principal.clone());
        let rule = if first { RuleId::LAnd1 } else { RuleId::LAnd2 };
        ProofTree::node(
            s.with_antecedent(ant),
            RuleInstance::with_principal(rule, principal),
            alloc::vec![premise],
        )
    }

    pub fn stl_l_or(left: ProofTree, right: ProofTree, principal: Formula) -> ProofTree {
        let (a, _) = components(&principal, 0);
        let s = left.sequent();
        let ant = s
            .antecedent
            .without(&a)
            .expect("L∨ premise lacks its component")
            .with(principal.clone());
        ProofTree::node(
            s.with_antecedent(ant),
            RuleInstance::with_principal(RuleId::LOr, principal),
            alloc::vec![left, right],
        )
    }

    /// STL `L→`: `Γ ⇒ A` and `Γ, B ⇒ Δ` give `Γ, ∇(A→B) ⇒ Δ`.
    pub fn stl_l_dyn_imp(left: ProofTree, right: ProofTree, principal: Formula) -> ProofTree {
        let concl = right
            .sequent()
            .with_antecedent(left.sequent().antecedent.with(principal.clone()));
        ProofTree::node(
            concl,
            RuleInstance::with_principal(RuleId::LDynImp, principal),
            alloc::vec![left, right],
        )
    }

    /// STL `L⊃`: `Γ ⇒ A` and `Γ, B ⇒ Δ` give `Γ, A⊃B ⇒ Δ`.
    pub fn stl_l_heyt_imp(left: ProofTree, right: ProofTree, principal: Formula) -> ProofTree {
        let concl = right
            .sequent()
            .with_antecedent(left.sequent().antecedent.with(principal.clone()));
        ProofTree::node(
            concl,
            RuleInstance::with_principal(RuleId::LHeytImp, principal),
            alloc::vec![left, right],
        )
    }

    /// Operands of `∇ⁿ(A ∘ B)`.
    pub fn components(principal: &Formula, n: usize) -> (Formula, Formula) {
        let core = principal.peel_nabla(n).expect("principal lacks its ∇ prefix");
        let (_, a, b) = core.as_binary().expect("principal is not binary");
        (a.clone(), b.clone())
    }
}
