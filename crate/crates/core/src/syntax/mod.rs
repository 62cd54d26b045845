//! Formulas, sequents, concrete syntax and structural measures.

mod formula;
mod parse;
mod print;
mod sequent;

pub use formula::{is_atom_name, Connective, Formula, NablaPrefix, VariantStep};
pub use parse::{parse_formula, parse_sequent, parse_sequent_ordered, ParseError, ParseErrorKind};
pub use print::{print_formula, print_sequent};
pub use sequent::{Multiset, Sequent};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::arb_formula;
    use alloc::string::{String, ToString};
    use alloc::vec;
    use alloc::vec::Vec;
    use proptest::prelude::*;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn p() -> Formula {
        Formula::atom("p")
    }
    fn q() -> Formula {
        Formula::atom("q")
    }
    fn r() -> Formula {
        Formula::atom("r")
    }

    #[test]
    fn parses_nabla_of_disjunction() {
        assert_eq!(f("#(p | q)"), Formula::nabla(Formula::or(p(), q())));
    }

    #[test]
    fn implication_is_right_associative() {
        assert_eq!(f("p -> q -> r"), Formula::dyn_imp(p(), Formula::dyn_imp(q(), r())));
        assert_eq!(f("p => q -> r"), Formula::heyt_imp(p(), Formula::dyn_imp(q(), r())));
    }

    #[test]
    fn bang_is_box_sugar() {
        assert_eq!(f("!p"), Formula::dyn_imp(Formula::Top, p()));
        assert_eq!(print_formula(&f("!p")), "T -> p");
    }

    #[test]
    fn precedence() {
        assert_eq!(
            f("#p & q | r -> p"),
            Formula::dyn_imp(Formula::or(Formula::and(Formula::nabla(p()), q()), r()), p())
        );
        assert_eq!(f("p & q & r"), Formula::and(Formula::and(p(), q()), r()));
    }

    #[test]
    fn printing_is_minimal() {
        assert_eq!(print_formula(&f("#(p | q)")), "#(p | q)");
        assert_eq!(print_formula(&Formula::and(p(), Formula::and(q(), r()))), "p & (q & r)");
        assert_eq!(print_formula(&f("(p & q) & r")), "p & q & r");
        assert_eq!(print_formula(&f("(p -> q) -> r")), "(p -> q) -> r");
        assert_eq!(print_formula(&f("p -> (q -> r)")), "p -> q -> r");
        assert_eq!(print_formula(&f("##(p -> F)")), "##(p -> F)");
    }

    #[test]
    fn sequents() {
        let s = parse_sequent("p, #(p -> q) |- q").unwrap();
        assert_eq!(
            s,
            Sequent::new(vec![p(), Formula::nabla(Formula::dyn_imp(p(), q()))], Some(q()))
        );
        assert_eq!(
            parse_sequent("|- T").unwrap(),
            Sequent::new(Multiset::new(), Some(Formula::Top))
        );
        assert_eq!(parse_sequent("F |-").unwrap(), Sequent::new(vec![Formula::Bot], None));
        assert_eq!(parse_sequent("|-").unwrap(), Sequent::new(Multiset::new(), None));
        assert_eq!(parse_sequent("q, p |- p"), parse_sequent("p, q |- p"));
    }

    #[test]
    fn sequent_printing() {
        for s in ["p, #(p -> q) |- q", "|- T", "F |-", "|-", "p, p |- p"] {
            let seq = parse_sequent(s).unwrap();
            assert_eq!(parse_sequent(&print_sequent(&seq)).unwrap(), seq);
        }
        assert_eq!(print_sequent(&parse_sequent("F |-").unwrap()), "F |-");
        assert_eq!(print_sequent(&parse_sequent("|- T").unwrap()), "|- T");
    }

    #[test]
    fn errors_carry_position_and_expectations() {
        let e = parse_formula("p &\n  ").unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
        assert!(e.expected().contains(&"identifier"));
        assert!(e.expected().contains(&"("));

        let e = parse_formula("p q").unwrap_err();
        assert_eq!((e.line, e.column), (1, 3));
        for t in ["&", "|", "->", "=>", "end of input"] {
            assert!(e.expected().contains(&t), "{t} missing from {:?}", e.expected());
        }

        let e = parse_formula("(p").unwrap_err();
        assert!(e.expected().contains(&")"));

        let e = parse_sequent("|- p, q").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::MultipleSuccedents);
        assert_eq!((e.line, e.column), (1, 5));

        assert!(matches!(
            parse_formula("P").unwrap_err().kind,
            ParseErrorKind::InvalidToken(_)
        ));
        assert!(matches!(
            parse_formula("p - q").unwrap_err().kind,
            ParseErrorKind::InvalidToken(_)
        ));
        assert!(parse_formula("Tx").is_err());
        assert!(parse_formula("").is_err());
        assert!(parse_sequent("p").is_err());
        assert!(parse_sequent("p, |- q").is_err());
    }

    #[test]
    fn rank_examples() {
        assert_eq!(p().rank(), 1);
        assert_eq!(Formula::nabla(p()).rank(), 1);
        assert_eq!(f("(p & q) -> r").rank(), 3);
        assert_eq!(f("#(p & #q) | F").rank(), 3);
    }

    #[test]
    fn atom_examples() {
        let names = |g: &Formula| -> Vec<String> { g.atoms().iter().map(|a| a.to_string()).collect() };
        assert_eq!(names(&f("T -> p")), vec!["p"]);
        assert!(names(&Formula::Bot).is_empty());
        assert_eq!(names(&f("#(p => q) & p")), vec!["p", "q"]);
    }

    #[test]
    fn strip_examples() {
        assert_eq!(
            f("##(p & q)").strip_nabla(),
            NablaPrefix {
                depth: 2,
                core: f("p & q")
            }
        );
        assert_eq!(p().strip_nabla(), NablaPrefix { depth: 0, core: p() });
        assert_eq!(
            f("#T").strip_nabla(),
            NablaPrefix {
                depth: 1,
                core: Formula::Top
            }
        );
    }

    #[test]
    fn variant_examples() {
        assert_eq!(p().variants_up_to(0).into_iter().collect::<Vec<_>>(), vec![p()]);
        let one = p().variants_up_to(1);
        assert_eq!(one.len(), 3);
        assert!(one.contains(&p()));
        assert!(one.contains(&Formula::nabla(p())));
        assert!(one.contains(&Formula::boxed(p())));
        assert_eq!(p().variants_up_to(2).len(), 7);
        assert_eq!(
            f("#(T -> p)").variant_path(&p()),
            Some(vec![VariantStep::Box, VariantStep::Nabla])
        );
        assert_eq!(f("p & p").variant_path(&p()), None);
    }

    #[test]
    fn multiset_semantics() {
        let a = Multiset::from(vec![q(), p(), q()]);
        let b = Multiset::from(vec![q(), q(), p()]);
        assert_eq!(a, b);
        assert_eq!(a.count(&q()), 2);
        assert_ne!(a, Multiset::from(vec![p(), q()]));
        assert_eq!(a.without(&q()).unwrap(), Multiset::from(vec![p(), q()]));
        assert!(a.without(&r()).is_none());
        assert_eq!(a.to_set(), Multiset::from(vec![p(), q()]));
        assert_eq!(
            a.difference(&Multiset::from(vec![q(), q()])).unwrap(),
            Multiset::singleton(p())
        );
        assert!(a.difference(&Multiset::from(vec![p(), p()])).is_none());
        assert_eq!(a.union(&Multiset::singleton(r())).len(), 4);
        assert_eq!(a.nabla(2).unwrap_nabla().unwrap(), a.nabla(1));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]
        #[test]
        fn print_parse_round_trip(g in arb_formula(8)) {
            let text = print_formula(&g);
            prop_assert_eq!(parse_formula(&text).unwrap(), g);
        }
    }

    proptest! {
        #[test]
        fn rank_ignores_nabla(g in arb_formula(6), n in 0usize..=5) {
            prop_assert_eq!(g.clone().nabla_n(n).rank(), g.rank());
        }

        #[test]
        fn strip_then_rewrap(g in arb_formula(6), n in 0usize..4) {
            let h = g.nabla_n(n);
            let s = h.strip_nabla();
            prop_assert!(!s.core.is_nabla());
            prop_assert_eq!(s.rewrap(), h);
        }

        #[test]
        fn atoms_stable_under_wrapping(g in arb_formula(6)) {
            prop_assert_eq!(Formula::nabla(g.clone()).atoms(), g.atoms());
            prop_assert_eq!(Formula::boxed(g.clone()).atoms(), g.atoms());
        }

        #[test]
        fn variant_count_bound(g in arb_formula(4), d in 0usize..5) {
            let vs = g.variants_up_to(d);
            prop_assert!(vs.len() < 1 << (d + 1));
            for v in &vs {
                prop_assert!(v.variant_path(&g).is_some());
            }
        }

        #[test]
        fn sequent_round_trip(ant in prop::collection::vec(arb_formula(4), 0..4), succ in prop::option::of(arb_formula(4))) {
            let s = Sequent::new(ant, succ);
            prop_assert_eq!(parse_sequent(&print_sequent(&s)).unwrap(), s);
        }
    }
}
