use alloc::vec;
use proptest::prelude::*;

use super::*;
use crate::gen::{self, ProofShape};
use crate::kernel::build::*;
use crate::kernel::derived::{box_mono, identity, mp};
use crate::kernel::{check_proof, CalculusId, RuleId, RuleInstance};
use crate::syntax::{parse_formula, parse_sequent, Connective};
use crate::testutil::rng;

fn f(s: &str) -> Formula {
    parse_formula(s).unwrap()
}

fn seq(s: &str) -> Sequent {
    parse_sequent(s).unwrap()
}

fn ms(fs: &[&str]) -> Multiset {
    fs.iter().map(|s| f(s)).collect()
}

fn cut_free(t: &ProofTree) {
    check_proof(t, CalculusId::ikd()).unwrap();
}

fn single(i: Inversion) -> ProofTree {
    match i {
        Inversion::Single(t) => t,
        Inversion::Pair(..) => panic!("expected one proof"),
    }
}

#[test]
fn invert_under_n() {
    let t = n(identity(&f("p & q")));
    assert_eq!(t.sequent(), &seq("#(p & q) |- #(p & q)"));
    let out = single(invert(&t, &f("#(p & q)")).unwrap());
    cut_free(&out);
    assert_eq!(out.sequent(), &seq("#p, #q |- #(p & q)"));
    assert!(out.height() <= t.height());
}

#[test]
fn invert_weakened_target() {
    let t = lw(r_top(), &ms(&["p & q", "r"]));
    let out = single(invert(&t, &f("p & q")).unwrap());
    assert_eq!(out.rule_id(), Some(RuleId::LW));
    assert_eq!(out.premise(0).rule_id(), Some(RuleId::RTop));
    assert_eq!(out.sequent(), &seq("p, q, r |- T"));
}

#[test]
fn invert_heyting_under_n() {
    let t = n(identity(&f("p => q")));
    let out = single(invert(&t, &f("#(p => q)")).unwrap());
    cut_free(&out);
    assert_eq!(out.rule_id(), Some(RuleId::N));
    assert_eq!(out.sequent(), &seq("#q |- #(p => q)"));
}

#[test]
fn invert_disjunction_gives_two() {
    let t = identity(&f("p | q"));
    let Inversion::Pair(l, r) = invert(&t, &f("p | q")).unwrap() else {
        panic!("expected two proofs");
    };
    assert_eq!(l.sequent(), &seq("p |- p | q"));
    assert_eq!(r.sequent(), &seq("q |- p | q"));
}

#[test]
fn invert_errors() {
    let t = identity(&f("p & q"));
    assert!(matches!(invert(&t, &f("p")), Err(TransformError::Target(_))));
    assert!(matches!(invert(&t, &f("r & q")), Err(TransformError::Target(_))));
    let bad = ProofTree::node(seq("q |- q"), RuleInstance::bare(RuleId::Id), vec![]);
    assert!(matches!(invert(&bad, &f("q")), Err(TransformError::InputRejected(_))));
}

#[test]
fn contract_drops_weakening() {
    let t = lw(id_p(f("p")), &ms(&["p"]));
    let out = contract(&t, &f("p")).unwrap();
    assert_eq!(out, id_p(f("p")));
}

#[test]
fn contract_principal_conjunction() {
    let a = f("p & q");
    let t = gen::spread_weakening(&identity(&a), &Multiset::singleton(a.clone()));
    assert_eq!(t.sequent(), &seq("p & q, p & q |- p & q"));
    let out = contract(&t, &a).unwrap();
    cut_free(&out);
    assert_eq!(out.sequent(), &seq("p & q |- p & q"));
    assert_eq!(out.rule_id(), Some(RuleId::LAndN));
    assert!(out.height() <= t.height());
}

#[test]
fn contract_principal_dyn_imp() {
    let p = f("#(p -> q)");
    let t = gen::spread_weakening(&mp(&f("p"), &f("q")), &Multiset::singleton(p.clone()));
    let out = contract(&t, &p).unwrap();
    cut_free(&out);
    assert_eq!(out.sequent(), &seq("p, #(p -> q) |- q"));
    assert_eq!(out.rule_id(), Some(RuleId::LDynImpN));
    assert!(out.height() <= t.height());
}

#[test]
fn contract_needs_two() {
    assert_eq!(
        contract(&id_p(f("p")), &f("p")),
        Err(TransformError::Multiplicity(f("p")))
    );
}

#[test]
fn cut_with_identity() {
    let d2 = lw(id_p(f("p")), &ms(&["q"]));
    let out = cut_once(&id_p(f("p")), &d2, 0).unwrap();
    assert_eq!(out, d2);
}

#[test]
fn cut_through_n() {
    let d2 = n(id_p(f("p")));
    let out = cut_once(&id_p(f("p")), &d2, 1).unwrap();
    cut_free(&out);
    assert_eq!(out.sequent(), &seq("#p |- #p"));
}

#[test]
fn cut_principal_conjunction() {
    let both = ms(&["p", "q"]);
    let d1 = r_and(lw_to(id_p(f("p")), &both), lw_to(id_p(f("q")), &both));
    let d2 = identity(&f("p & q"));
    assert_eq!(d2.rule_id(), Some(RuleId::LAndN));
    let out = cut_once(&d1, &d2, 0).unwrap();
    cut_free(&out);
    assert_eq!(out.sequent(), &seq("p, q |- p & q"));
}

#[test]
fn cut_principal_dyn_imp() {
    let d1 = identity(&f("p -> q"));
    let d2 = mp(&f("p"), &f("q"));
    let out = cut_once(&d1, &d2, 1).unwrap();
    cut_free(&out);
    assert_eq!(out.sequent(), &seq("p, #(p -> q) |- q"));
}

#[test]
fn cut_errors() {
    let d2 = id_p(f("q"));
    assert!(matches!(cut_once(&id_p(f("p")), &d2, 0), Err(TransformError::Shape(_))));
    assert!(matches!(cut_once(&l_bot(), &d2, 0), Err(TransformError::Shape(_))));
}

#[test]
fn eliminate_keeps_cut_free_input() {
    let t = identity(&f("#(p | q) -> r"));
    let out = eliminate_cuts(&t).unwrap();
    assert_eq!(out.as_node().map(|n| n as *const _), t.as_node().map(|n| n as *const _));
}

#[test]
fn eliminate_generalized_cut() {
    let t = cut(identity(&f("p -> q")), mp(&f("p"), &f("q")), 1);
    check_proof(&t, CalculusId::ikd().with_cut(true)).unwrap();
    for s in [CutStrategy::LeftFirst, CutStrategy::RightFirst] {
        let out = eliminate_cuts_with(&t, s).unwrap();
        cut_free(&out);
        assert_eq!(out.sequent(), t.sequent());
    }
    let bare = eliminate_cuts(&t);
    assert!(bare.is_ok());
    assert!(matches!(
        eliminate_cuts(&hypothesis(seq("|- p"))),
        Err(TransformError::InputRejected(_))
    ));
}

#[test]
fn nabla_or_distribution_pipeline() {
    let d = nabla_dist_proof(Connective::Or, 1, &f("p"), &f("q"), CalculusId::stln()).unwrap();
    assert_eq!(d.sequent(), &seq("#(p | q) |- #p | #q"));
    assert!(d.contains_rule(RuleId::Cut));
    let t = stl_to_ikd(&d).unwrap();
    check_proof(&t, CalculusId::ikds()).unwrap();
    assert_eq!(t.sequent(), d.sequent());
    let back = ikd_to_stl(&t).unwrap();
    check_proof(&back, CalculusId::stln()).unwrap();
    assert_eq!(back.sequent(), d.sequent());
}

#[test]
fn distribution_examples() {
    let calc = CalculusId::stlnh();
    let cases = [
        (Connective::And, 0, "p & q |- p & q"),
        (Connective::DynImp, 2, "##(p -> q) |- ##p -> ##q"),
        (Connective::Or, 3, "###(p | q) |- ###p | ###q"),
        (Connective::HeytImp, 2, "##(p => q) |- ##p => ##q"),
        (Connective::And, 3, "###(p & q) |- ###p & ###q"),
    ];
    for (conn, k, want) in cases {
        let d = nabla_dist_proof(conn, k, &f("p"), &f("q"), calc).unwrap();
        assert_eq!(d.sequent(), &seq(want), "{conn:?} {k}");
    }
    assert_eq!(
        nabla_dist_proof(Connective::HeytImp, 1, &f("p"), &f("q"), CalculusId::stln()),
        Err(TransformError::OutsideLanguage)
    );
    assert!(nabla_dist_proof(Connective::Or, 1, &f("p"), &f("q"), CalculusId::ikd()).is_err());
}

#[test]
fn stl_identity_on_compound() {
    let a = f("#p & (q -> r)");
    assert_eq!(stl_to_ikd(&id(a.clone())).unwrap(), identity(&a));
}

#[test]
fn stl_contraction_and_conjunction() {
    let a = f("p & q");
    let t = lc(stl_lw(id(a.clone()), a.clone()), a.clone());
    let out = stl_to_ikd(&t).unwrap();
    assert_eq!(out, identity(&a));

    let t = l_and_i(id(f("p")), a.clone(), true);
    let out = stl_to_ikd(&t).unwrap();
    cut_free(&out);
    assert_eq!(out.rule_id(), Some(RuleId::LAndN));
    assert_eq!(out.premise(0).rule_id(), Some(RuleId::LW));
    assert_eq!(out.sequent(), &seq("p & q |- p"));
}

#[test]
fn ikd_to_stl_examples() {
    assert_eq!(ikd_to_stl(&id_p(f("p"))).unwrap(), id(f("p")));

    let big = f("##(p -> q)");
    let ctx = ms(&["#p", "##(p -> q)"]);
    let left = lw_to(n(id_p(f("p"))), &ctx);
    let right = lw_to(n(id_p(f("q"))), &ctx.with(f("#q")));
    let t = l_dyn_imp_n(left, right, 1, big);
    cut_free(&t);
    let out = ikd_to_stl(&t).unwrap();
    check_proof(&out, CalculusId::stln()).unwrap();
    assert_eq!(out.sequent(), &seq("#p, ##(p -> q) |- #q"));
    assert_eq!(out.rule_id(), Some(RuleId::Lc));
    assert_eq!(out.premise(0).rule_id(), Some(RuleId::Cut));

    let t = n(identity(&f("p & q")));
    let t = single(invert(&t, &f("#(p & q)")).unwrap());
    let t = l_and_n(t, 1, f("#(p & q)"));
    let out = ikd_to_stl(&t).unwrap();
    check_proof(&out, CalculusId::stln()).unwrap();
    assert_eq!(out.rule_id(), Some(RuleId::Cut));
    assert_eq!(out.sequent(), t.sequent());
}

#[test]
fn export_examples() {
    let a = f("p -> q");
    let plain = identity(&f("r"));
    let r = deduction_export(&plain, &a).unwrap();
    assert!(r.sigma.is_empty());
    assert_eq!(r.proof, plain);

    let h = hypothesis(Sequent::theorem(a.clone()));
    let r = deduction_export(&h, &a).unwrap();
    assert_eq!(r.sigma, Multiset::singleton(a.clone()));
    assert_eq!(r.proof, identity(&a));

    let r = deduction_export(&n(h.clone()), &a).unwrap();
    assert_eq!(r.sigma, ms(&["#(p -> q)"]));
    cut_free(&r.proof);
    assert_eq!(r.proof.sequent(), &seq("#(p -> q) |- #(p -> q)"));

    let other = hypothesis(seq("|- p"));
    assert_eq!(
        deduction_export(&other, &a),
        Err(TransformError::HypothesisMismatch(seq("|- p")))
    );
}

#[test]
fn export_through_abstraction_and_cut() {
    let a = f("p");
    let h = hypothesis(Sequent::theorem(a.clone()));
    let body = lw(n(h.clone()), &ms(&["r"]));
    let t = r_dyn_imp(body, Multiset::new(), f("r"));
    let r = deduction_export(&t, &a).unwrap();
    assert_eq!(r.sigma, ms(&["T -> #p"]));
    cut_free(&r.proof);
    assert_eq!(r.proof.sequent(), &seq("T -> #p |- r -> #p"));

    let t = cut(n(h.clone()), mp(&f("#p"), &f("q")), 0);
    let r = deduction_export(&t, &a).unwrap();
    assert_eq!(r.sigma, ms(&["#p"]));
    cut_free(&r.proof);
    assert_eq!(r.proof.sequent(), &seq("#p, #(#p -> q) |- q"));
}

#[test]
fn import_examples() {
    let a = f("p");
    let t = identity(&f("q"));
    assert_eq!(deduction_import(&a, &Multiset::new(), &t).unwrap(), t);

    let t = lw(id_p(f("q")), &ms(&["#p"]));
    let out = deduction_import(&a, &ms(&["#p"]), &t).unwrap();
    assert_eq!(out.rule_id(), Some(RuleId::Cut));
    assert_eq!(out.premise(0), &n(hypothesis(Sequent::theorem(a.clone()))));
    assert_eq!(out.sequent(), &seq("q |- q"));

    let t = lw(id_p(f("q")), &ms(&["T -> p"]));
    let out = deduction_import(&a, &ms(&["T -> p"]), &t).unwrap();
    assert_eq!(out.premise(0), &box_mono(hypothesis(Sequent::theorem(a.clone()))));
    check_proof(&out, CalculusId::ikd().with_cut(true).with_hypotheses(true)).unwrap();

    let t = lw(id_p(f("q")), &ms(&["p & p"]));
    assert_eq!(
        deduction_import(&a, &ms(&["p & p"]), &t),
        Err(TransformError::NotAVariant(f("p & p")))
    );
}

fn shape(heyting: bool) -> ProofShape {
    ProofShape {
        formulas: gen::FormulaShape::new(&["p", "q", "r"], 2, heyting),
        ..ProofShape::default()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn stl_round_trip(seed: u64, heyting: bool) {
        let sh = shape(heyting);
        let t = gen::stl_proof(&mut rng(seed), &sh);
        let target = if heyting { CalculusId::ikd() } else { CalculusId::ikds() };
        let out = stl_to_ikd(&t).unwrap();
        prop_assert!(out.is_cut_free());
        prop_assert!(check_proof(&out, target).is_ok());
        prop_assert_eq!(out.sequent(), t.sequent());
        let back = ikd_to_stl(&out).unwrap();
        prop_assert!(check_proof(&back, gen::stl_calculus(&sh)).is_ok());
        prop_assert_eq!(back.sequent(), t.sequent());
    }

    #[test]
    fn invert_preserves_height(seed: u64, heyting: bool) {
        let t = gen::ikd_proof(&mut rng(seed), &shape(heyting));
        for a in t.sequent().antecedent.distinct() {
            let Ok(inv) = invert(&t, a) else { continue };
            let outs = match inv {
                Inversion::Single(x) => vec![x],
                Inversion::Pair(x, y) => vec![x, y],
            };
            for o in outs {
                prop_assert!(o.height() <= t.height());
                prop_assert!(check_proof(&o, CalculusId::ikd()).is_ok());
            }
        }
    }

    #[test]
    fn contract_preserves_height(seed: u64, heyting: bool, pick: usize) {
        let t = gen::ikd_proof(&mut rng(seed), &shape(heyting));
        let ant = &t.sequent().antecedent;
        prop_assume!(!ant.is_empty());
        let a = ant.as_slice()[pick % ant.len()].clone();
        let dup = gen::spread_weakening(&t, &Multiset::singleton(a.clone()));
        let out = contract(&dup, &a).unwrap();
        prop_assert!(out.height() <= dup.height());
        prop_assert!(check_proof(&out, CalculusId::ikd()).is_ok());
        prop_assert_eq!(out.sequent(), t.sequent());
    }

    #[test]
    fn strategies_agree_on_endsequent(seed: u64) {
        let mut r = rng(seed);
        let sh = shape(true);
        let t = gen::hypothesis_proof(&mut r, &f("p"), &sh);
        let t = deduction_export(&t, &f("p")).unwrap().proof;
        let l = gen::ikd_proof(&mut r, &sh);
        let Some(c) = l.sequent().succedent.clone() else { return Ok(()) };
        let with_cut = cut(l, lw(t, &Multiset::singleton(c)), 0);
        let a = eliminate_cuts_with(&with_cut, CutStrategy::LeftFirst).unwrap();
        let b = eliminate_cuts_with(&with_cut, CutStrategy::RightFirst).unwrap();
        prop_assert_eq!(a.sequent(), with_cut.sequent());
        prop_assert_eq!(b.sequent(), with_cut.sequent());
        prop_assert!(check_proof(&a, CalculusId::ikd()).is_ok());
        prop_assert!(check_proof(&b, CalculusId::ikd()).is_ok());
    }

    #[test]
    fn deduction_round_trip(seed: u64, heyting: bool) {
        let mut r = rng(seed);
        let sh = shape(heyting);
        let a = gen::formula(&mut r, &sh.formulas);
        let t = gen::hypothesis_proof(&mut r, &a, &sh);
        let out = deduction_export(&t, &a).unwrap();
        prop_assert!(check_proof(&out.proof, CalculusId::ikd()).is_ok());
        for b in out.sigma.iter() {
            prop_assert!(b.variant_path(&a).is_some());
        }
        let back = deduction_import(&a, &out.sigma, &out.proof).unwrap();
        prop_assert_eq!(back.sequent(), t.sequent());
        prop_assert!(check_proof(&back, CalculusId::ikd().with_cut(true).with_hypotheses(true)).is_ok());
    }
}
