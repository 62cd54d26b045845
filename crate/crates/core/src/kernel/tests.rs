use alloc::vec;
use alloc::vec::Vec;
use proptest::prelude::*;

use super::build::*;
use super::derived::{self, identity, mp};
use super::*;
use crate::syntax::{parse_formula, parse_sequent, Formula, Multiset, Sequent};
use crate::testutil::{arb_formula, arb_star_formula};

fn f(s: &str) -> Formula {
    parse_formula(s).unwrap()
}

fn seq(s: &str) -> Sequent {
    parse_sequent(s).unwrap()
}

fn ikd() -> CalculusId {
    CalculusId::ikd()
}

#[test]
fn axiom_instances() {
    let ok = check_instance(&seq("p |- p"), &RuleInstance::bare(RuleId::IdP), &[], ikd());
    assert_eq!(ok, Ok(()));
    assert!(check_instance(&seq("p & q |- p & q"), &RuleInstance::bare(RuleId::IdP), &[], ikd()).is_err());
    assert!(check_instance(&seq("q, p |- p"), &RuleInstance::bare(RuleId::IdP), &[], ikd()).is_err());
    assert_eq!(
        check_instance(&seq("F |-"), &RuleInstance::bare(RuleId::LBot), &[], ikd()),
        Ok(())
    );
    assert!(check_instance(&seq("F |- p"), &RuleInstance::bare(RuleId::LBot), &[], ikd()).is_err());
    assert_eq!(
        check_instance(&seq("|- T"), &RuleInstance::bare(RuleId::RTop), &[], ikd()),
        Ok(())
    );
    assert!(check_instance(&seq("p |- T"), &RuleInstance::bare(RuleId::RTop), &[], ikd()).is_err());
}

#[test]
fn right_dynamic_implication_with_empty_context() {
    let r = check_instance(
        &seq("|- p -> q"),
        &RuleInstance::bare(RuleId::RDynImp),
        &[seq("p |- q")],
        ikd(),
    );
    assert_eq!(r, Ok(()));
    let wrapped = check_instance(
        &seq("r |- p -> q"),
        &RuleInstance::bare(RuleId::RDynImp),
        &[seq("r, p |- q")],
        ikd(),
    );
    assert!(wrapped.is_err());
    let ok = check_instance(
        &seq("r |- p -> q"),
        &RuleInstance::bare(RuleId::RDynImp),
        &[seq("#r, p |- q")],
        ikd(),
    );
    assert_eq!(ok, Ok(()));
}

#[test]
fn arity_violation_is_named() {
    let r = check_instance(
        &seq("p |- p & p"),
        &RuleInstance::bare(RuleId::RAnd),
        &[seq("p |- p")],
        ikd(),
    );
    assert_eq!(r.unwrap_err().0, "RAnd requires two premises");
}

#[test]
fn dynamic_left_rule_keeps_principal() {
    let principal = f("##(p -> q)");
    let inst = RuleInstance::left_n(RuleId::LDynImpN, 1, principal);
    let concl = seq("r, ##(p -> q) |- s");
    let good = [seq("r, ##(p -> q) |- #p"), seq("r, ##(p -> q), #q |- s")];
    assert_eq!(check_instance(&concl, &inst, &good, ikd()), Ok(()));
    let dropped = [seq("r |- #p"), seq("r, #q |- s")];
    assert!(check_instance(&concl, &inst, &dropped, ikd()).is_err());
    let wrong_n = RuleInstance::left_n(RuleId::LDynImpN, 2, f("##(p -> q)"));
    assert!(check_instance(&concl, &wrong_n, &good, ikd()).is_err());
}

#[test]
fn heyting_left_rule_drops_principal_on_the_right() {
    let inst = RuleInstance::left_n(RuleId::LHeytImpN, 1, f("#(p => q)"));
    let concl = seq("r, #(p => q) |- s");
    let prem = [seq("r, #(p => q) |- #p"), seq("r, #q |- s")];
    assert_eq!(check_instance(&concl, &inst, &prem, ikd()), Ok(()));
    assert!(check_instance(&concl, &inst, &prem, CalculusId::ikds()).is_err());
}

#[test]
fn nabla_rule_allows_empty_succedent() {
    let inst = RuleInstance::bare(RuleId::N);
    assert_eq!(
        check_instance(&seq("#p, #q |-"), &inst, &[seq("p, q |-")], ikd()),
        Ok(())
    );
    assert_eq!(check_instance(&seq("|- #p"), &inst, &[seq("|- p")], ikd()), Ok(()));
    assert!(check_instance(&seq("#p, q |- #p"), &inst, &[seq("p, q |- p")], ikd()).is_err());
    assert!(check_instance(&seq("#p |- p"), &inst, &[seq("p |-")], ikd()).is_err());
}

#[test]
fn fields_must_match_the_rule() {
    let mut inst = RuleInstance::bare(RuleId::IdP);
    inst.n = Some(0);
    assert!(check_instance(&seq("p |- p"), &inst, &[], ikd()).is_err());
    let no_principal = RuleInstance::bare(RuleId::LAndN);
    assert!(check_instance(&seq("p & q |-"), &no_principal, &[seq("p, q |-")], ikd()).is_err());
}

#[test]
fn two_node_dynamic_identity() {
    let t = r_dyn_imp(id_p(f("p")), Multiset::new(), f("p"));
    assert_eq!(t.sequent(), &seq("|- p -> p"));
    assert_eq!(check_proof(&t, ikd()), Ok(()));
    assert_eq!(t.height(), 1);
}

#[test]
fn modus_ponens_tree() {
    let t = mp(&f("p"), &f("q"));
    assert_eq!(t.sequent(), &seq("p, #(p -> q) |- q"));
    assert_eq!(check_proof(&t, ikd()), Ok(()));
    assert_eq!(t.rule_id(), Some(RuleId::LDynImpN));
    assert_eq!(check_proof(&t, CalculusId::ikds()), Ok(()));
}

#[test]
fn cut_is_rejected_without_the_flag() {
    let left = id_p(f("p"));
    let right = lw(id_p(f("p")), &Multiset::singleton(f("q")));
    let t = r_or1(cut(left, right, 0), f("r"));
    let err = check_proof(&t, ikd()).unwrap_err();
    assert_eq!(err.path, vec![0]);
    assert_eq!(check_proof(&t, ikd().with_cut(true)), Ok(()));
    assert_eq!(t.sequent(), &seq("q, p |- p | r"));
}

#[test]
fn generalized_cut_instance() {
    let left = id_p(f("p"));
    let right = n(id_p(f("p")));
    let t = cut(left, right, 1);
    assert_eq!(t.sequent(), &seq("#p |- #p"));
    assert_eq!(check_proof(&t, ikd().with_cut(true)), Ok(()));
    assert!(check_proof(&t, CalculusId::stlnh()).is_err());
}

#[test]
fn hypotheses_need_the_flag() {
    let t = n(hypothesis(seq("|- p")));
    assert!(check_proof(&t, ikd()).is_err());
    assert_eq!(check_proof(&t, ikd().with_hypotheses(true)), Ok(()));
}

#[test]
fn identity_examples() {
    let t = identity(&f("p -> q"));
    assert_eq!(t.rule_id(), Some(RuleId::RDynImp));
    assert_eq!(t.premise(0).rule_id(), Some(RuleId::LDynImpN));
    assert_eq!(t.sequent(), &seq("p -> q |- p -> q"));
    assert_eq!(check_proof(&t, ikd()), Ok(()));

    let bot = identity(&Formula::Bot);
    assert_eq!(bot.rule_id(), Some(RuleId::Rw));
    assert_eq!(bot.premise(0).rule_id(), Some(RuleId::LBot));
    assert_eq!(check_proof(&bot, ikd()), Ok(()));
}

#[test]
fn derived_constructors_check() {
    let base = mp(&f("p"), &f("q"));
    let lifted = derived::nabla_box_left(base.clone(), &f("p"));
    assert_eq!(lifted.sequent(), &seq("#(T -> p), #(p -> q) |- q"));
    assert_eq!(check_proof(&lifted, ikd()), Ok(()));

    let mono = derived::box_mono(base);
    assert_eq!(mono.sequent(), &seq("T -> p, T -> #(p -> q) |- T -> q"));
    assert_eq!(check_proof(&mono, ikd()), Ok(()));

    let d = lw(id_p(f("q")), &Multiset::from(vec![f("#r"), f("s")]));
    let abs = derived::abstraction(
        d.clone(),
        &Multiset::singleton(f("r")),
        &Multiset::singleton(f("s")),
        &f("q"),
    );
    assert_eq!(abs.sequent(), &seq("r, T -> s |- q -> q"));
    assert_eq!(check_proof(&abs, ikd()), Ok(()));

    let checked = derived_proof(
        DerivedKind::Abstraction {
            proof: d,
            gamma: Multiset::singleton(f("r")),
            sigma: Multiset::new(),
            formula: f("q"),
        },
        ikd(),
    );
    assert!(checked.is_err());
}

#[test]
fn enumeration_examples() {
    let goal = seq("##(p & q), r |- r");
    let got = applicable_instances(&goal, ikd());
    assert!(got.contains(&(
        RuleInstance::left_n(RuleId::LAndN, 2, f("##(p & q)")),
        vec![seq("##p, ##q, r |- r")]
    )));

    let got = applicable_instances(&seq("#p |- #q"), ikd());
    assert!(got.contains(&(RuleInstance::bare(RuleId::N), vec![seq("p |- q")])));

    let got = applicable_instances(&seq("|- p -> q"), ikd());
    assert!(got.contains(&(RuleInstance::bare(RuleId::RDynImp), vec![seq("p |- q")])));
    assert!(got.contains(&(RuleInstance::bare(RuleId::Rw), vec![seq("|-")])));

    let got = applicable_instances(&seq("#(p -> q) |- r"), ikd());
    assert!(got.contains(&(
        RuleInstance::left_n(RuleId::LDynImpN, 0, f("#(p -> q)")),
        vec![seq("#(p -> q) |- p"), seq("#(p -> q), q |- r")]
    )));
    let got = applicable_instances(&seq("p -> q |- r"), ikd());
    assert!(got.iter().all(|(i, _)| i.rule != RuleId::LDynImpN));
}

/// Every node of `t` must be reachable through `applicable_instances`.
fn enumerated_everywhere(t: &ProofTree, calc: CalculusId) -> bool {
    let Some(node) = t.as_node() else { return true };
    let premises: Vec<Sequent> = node.premises.iter().map(|p| p.sequent().clone()).collect();
    let expand = node.rule.rule != RuleId::LW || node.rule.intro.as_ref().unwrap().len() == 1;
    let here = !expand
        || applicable_instances(&node.sequent, calc)
            .iter()
            .any(|(i, ps)| *i == node.rule && *ps == premises);
    here && node.premises.iter().all(|p| enumerated_everywhere(p, calc))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]
    #[test]
    fn identity_checks(a in arb_formula(8)) {
        let t = identity(&a);
        prop_assert_eq!(t.sequent(), &Sequent::new(Multiset::singleton(a.clone()), Some(a.clone())));
        prop_assert_eq!(check_proof(&t, ikd()), Ok(()));
    }
}

proptest! {
    #[test]
    fn star_identity_checks_in_star_calculus(a in arb_star_formula(6)) {
        prop_assert_eq!(check_proof(&identity(&a), CalculusId::ikds()), Ok(()));
    }

    #[test]
    fn star_calculus_rejects_heyting(a in arb_formula(5)) {
        let t = identity(&a);
        let ok = check_proof(&t, CalculusId::ikds()).is_ok();
        prop_assert_eq!(ok, a.is_heyting_free());
    }

    #[test]
    fn enumeration_is_sound(ant in prop::collection::vec(arb_formula(3), 0..4), succ in prop::option::of(arb_formula(3))) {
        let goal = Sequent::new(ant, succ);
        for calc in [ikd(), CalculusId::ikds(), CalculusId::stlnh()] {
            if !calc.base.allows_heyting() && !goal.is_heyting_free() {
                continue;
            }
            for (inst, ps) in applicable_instances(&goal, calc) {
                prop_assert_eq!(check_instance(&goal, &inst, &ps, calc), Ok(()), "{:?}", inst);
            }
        }
    }

    #[test]
    fn identity_nodes_are_enumerated(a in arb_formula(5)) {
        prop_assert!(enumerated_everywhere(&identity(&a), ikd()));
    }

    #[test]
    fn mp_and_derived_nodes_are_enumerated(a in arb_formula(3), b in arb_formula(3)) {
        let t = derived::box_mono(mp(&a, &b));
        prop_assert_eq!(check_proof(&t, ikd()), Ok(()));
        prop_assert!(enumerated_everywhere(&t, ikd()));
    }
}
