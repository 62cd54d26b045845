use ikd::format::*;
use ikd_core::algebra::{refute, Refutation};
use ikd_core::gen::{self, FormulaShape, ProofShape};
use ikd_core::kernel::build::{hypothesis, id_p, lw};
use ikd_core::{parse_formula, parse_sequent, Multiset};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn shape(heyting: bool) -> ProofShape {
    ProofShape {
        formulas: FormulaShape::new(&["p", "q", "r"], 2, heyting),
        ..ProofShape::default()
    }
}

#[test]
fn axiom_layout() {
    let t = id_p(parse_formula("p").unwrap());
    let text = serde_json::to_string(&proof_to_json(&t)).unwrap();
    assert_eq!(text, r#"{"sequent":"p |- p","rule":"IdP","premises":[]}"#);
}

#[test]
fn weakening_and_hypothesis_layout() {
    let t = lw(
        hypothesis(parse_sequent("|- p").unwrap()),
        &Multiset::singleton(parse_formula("#q").unwrap()),
    );
    let text = serde_json::to_string(&proof_to_json(&t)).unwrap();
    assert_eq!(
        text,
        r##"{"sequent":"#q |- p","rule":"LW","intro":["#q"],"premises":[{"hypothesis":"|- p"}]}"##
    );
    assert_eq!(read_proof(&text).unwrap(), t);
}

#[test]
fn rejects_malformed_proofs() {
    assert!(matches!(read_proof("[]"), Err(FormatError::Json(_))));
    assert!(matches!(
        read_proof(r#"{"sequent":"p |- p","rule":"IdP","premises":[],"extra":1}"#),
        Err(FormatError::Json(_))
    ));
    assert!(matches!(
        read_proof(r#"{"sequent":"p |- p","rule":"Magic","premises":[]}"#),
        Err(FormatError::UnknownRule(_))
    ));
    assert!(matches!(
        read_proof(r#"{"sequent":"p |-- p","rule":"IdP","premises":[]}"#),
        Err(FormatError::Parse { .. })
    ));
}

fn countermodel_json(s: &str) -> CountermodelJson {
    match refute(&parse_sequent(s).unwrap(), 3, true).unwrap() {
        Refutation::Countermodel(c) => countermodel_to_json(&c),
        other => panic!("{s} not refuted: {other:?}"),
    }
}

#[test]
fn countermodel_round_trip() {
    let j = countermodel_json("p |- #p");
    let text = serde_json::to_string(&j).unwrap();
    let back: CountermodelJson = serde_json::from_str(&text).unwrap();
    let c = countermodel_from_json(&back).unwrap();
    assert_eq!(countermodel_to_json(&c), j);
}

#[test]
fn countermodel_revalidated() {
    let j = countermodel_json("p |- #p");
    let mut wrong = j.clone();
    wrong.refuted = "p |- p".into();
    assert!(matches!(
        countermodel_from_json(&wrong),
        Err(FormatError::Countermodel(_))
    ));
    let mut short = j.clone();
    short.nabla.pop();
    assert!(matches!(
        countermodel_from_json(&short),
        Err(FormatError::Countermodel(_))
    ));
    let mut broken = j;
    let top = broken.top;
    broken.nabla = vec![top; broken.size];
    assert!(matches!(
        countermodel_from_json(&broken),
        Err(FormatError::Countermodel(_))
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn cut_free_proofs_round_trip(seed: u64, heyting: bool) {
        let t = gen::ikd_proof(&mut ChaCha8Rng::seed_from_u64(seed), &shape(heyting));
        prop_assert_eq!(read_proof(&write_proof(&t)).unwrap(), t);
    }

    #[test]
    fn cutful_proofs_round_trip(seed: u64, heyting: bool) {
        let t = gen::stl_proof(&mut ChaCha8Rng::seed_from_u64(seed), &shape(heyting));
        prop_assert_eq!(read_proof(&write_proof(&t)).unwrap(), t);
    }

    #[test]
    fn hypothesis_proofs_round_trip(seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sh = shape(true);
        let a = gen::formula(&mut rng, &sh.formulas);
        let t = gen::hypothesis_proof(&mut rng, &a, &sh);
        prop_assert_eq!(read_proof(&write_proof(&t)).unwrap(), t);
    }
}
