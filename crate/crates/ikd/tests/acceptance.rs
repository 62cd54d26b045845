//! One line per acceptance criterion; exits non-zero if any fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use ikd_core::algebra::{enumerate_algebras, refute, refute_in, Refutation};
use ikd_core::gen::{self, FormulaShape, ProofShape};
use ikd_core::meta::{
    interpolate, interpolate_formula, split_disjunction, visser_disjunctive, visser_heyting, visser_implicative,
    Disjunct, FormulaInterpolation, VisserFamily,
};
use ikd_core::syntax::Connective;
use ikd_core::transform::{contract, deduction_export, deduction_import, ikd_to_stl, invert, stl_to_ikd, Inversion};
use ikd_core::{
    check_proof, parse_formula, parse_sequent, prove, CalculusId, Formula, Multiset, ProofTree, SearchBudget,
    SearchOutcome, Sequent,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0x1cd_2024;

/// Criterion 1.
const GOLDEN_BUDGET: SearchBudget = SearchBudget::new(30, 4, 200_000);
const GOLDEN_TIME_LIMIT: Duration = Duration::from_secs(1);
const GOLDEN_IDENTITIES: usize = 50;
const GOLDEN_MAX_EXPONENT: usize = 3;
const GOLDEN_MAX_ALGEBRA: usize = 4;

/// Criteria 2 and 4.
const STL_CORPUS: usize = 300;
const STL_MAX_HEIGHT: usize = 10;
const STL_TIME_LIMIT: Duration = Duration::from_secs(120);

/// Criterion 3.
const HEIGHT_CORPUS: usize = 500;

/// Criterion 5.
const ORACLE_CORPUS: usize = 500;
const ORACLE_FORMULA_DEPTH: usize = 5;
const ORACLE_MAX_ANTECEDENT: usize = 2;
const ORACLE_BUDGET: SearchBudget = SearchBudget::new(12, 2, 20_000);
const ORACLE_MAX_ALGEBRA: usize = 4;
const ORACLE_MIN_FOUND: usize = 25;
const ORACLE_TIME_LIMIT: Duration = Duration::from_secs(600);

/// Criterion 6.
const INTERPOLATION_CORPUS: usize = 200;

/// Criterion 7.
const DISJUNCTION_CORPUS: usize = 50;
const VISSER_CORPUS: usize = 50;
const VISSER_MAX_K: usize = 2;
const META_BUDGET: SearchBudget = SearchBudget::new(12, 3, 20_000);
const MAX_ATTEMPTS: usize = 20_000;

/// Criterion 8.
const DEDUCTION_CORPUS: usize = 100;

/// Criterion 9.
const CONSERVATIVITY_CORPUS: usize = 100;
const CONSERVATIVITY_BUDGET: SearchBudget = SearchBudget::new(12, 3, 20_000);

type Verdict = Result<String, String>;

fn rng(offset: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED + offset)
}

fn f(s: &str) -> Formula {
    parse_formula(s).unwrap()
}

fn seq(s: &str) -> Sequent {
    parse_sequent(s).unwrap()
}

fn found(s: &Sequent, calc: CalculusId, budget: SearchBudget) -> Option<ProofTree> {
    match prove(s, calc, budget).unwrap() {
        SearchOutcome::Found(t) => Some(t),
        SearchOutcome::Exhausted(_) => None,
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn proof_shape(heyting: bool) -> ProofShape {
    ProofShape {
        formulas: FormulaShape::new(&["p", "q", "r"], 2, heyting),
        max_height: STL_MAX_HEIGHT,
        ..ProofShape::default()
    }
}

/// Searches with a time limit and re-checks the proof.
fn golden_provable(s: &Sequent, slowest: &mut Duration) -> Result<(), String> {
    let start = Instant::now();
    let t = found(s, CalculusId::ikd(), GOLDEN_BUDGET).ok_or_else(|| format!("`{s}` not found"))?;
    let took = start.elapsed();
    *slowest = (*slowest).max(took);
    ensure(took <= GOLDEN_TIME_LIMIT, || format!("`{s}` took {took:?}"))?;
    check_proof(&t, CalculusId::ikd()).map_err(|e| format!("`{s}`: {e}"))?;
    ensure(t.sequent() == s, || format!("`{s}` proved `{}`", t.sequent()))
}

fn golden_unprovable(s: &Sequent, slowest: &mut Duration) -> Result<(), String> {
    let start = Instant::now();
    let outcome = prove(s, CalculusId::ikd(), GOLDEN_BUDGET).unwrap();
    let took = start.elapsed();
    *slowest = (*slowest).max(took);
    ensure(took <= GOLDEN_TIME_LIMIT, || format!("`{s}` took {took:?}"))?;
    ensure(matches!(outcome, SearchOutcome::Exhausted(_)), || {
        format!("`{s}` was proved")
    })?;
    match refute(s, GOLDEN_MAX_ALGEBRA, true).unwrap() {
        Refutation::Countermodel(c) if c.is_valid() && c.algebra.check_invariants().is_ok() => Ok(()),
        _ => Err(format!("`{s}` has no countermodel of size ≤ {GOLDEN_MAX_ALGEBRA}")),
    }
}

fn criterion_1() -> Verdict {
    let mut slowest = Duration::ZERO;
    let mut count = 0;
    let mut r = rng(1);
    let shape = FormulaShape::new(&["p", "q", "r"], 3, true);
    let mut provable = Vec::new();
    for _ in 0..GOLDEN_IDENTITIES {
        let a = gen::formula(&mut r, &shape);
        provable.push(Sequent::new(Multiset::singleton(a.clone()), Some(a)));
    }
    let small = FormulaShape::new(&["p", "q", "r"], 2, true);
    for _ in 0..10 {
        let (a, b) = (gen::formula(&mut r, &small), gen::formula(&mut r, &small));
        let imp = Formula::nabla(Formula::dyn_imp(a.clone(), b.clone()));
        provable.push(Sequent::new(Multiset::from(vec![a, imp]), Some(b)));
    }
    for (gamma, a, delta) in [
        ("", "p", "p"),
        ("q", "p & q", "q & p"),
        ("", "p | q", "q | p"),
        ("p", "#(p -> q)", "q"),
        ("#q", "p", "#q & p"),
        ("r", "p => q", "p => q"),
    ] {
        let ant = |x: Formula| {
            let mut m: Multiset = gamma.split(',').filter(|g| !g.trim().is_empty()).map(f).collect();
            m.insert(x);
            m
        };
        let delta = Some(f(delta));
        provable.push(Sequent::new(ant(f(a)), delta.clone()));
        provable.push(Sequent::new(ant(Formula::nabla(Formula::boxed(f(a)))), delta));
    }
    provable.push(seq("#(p | q) |- #p | #q"));
    for (a, b) in [("p", "q"), ("p & q", "#r"), ("p -> q", "r | p")] {
        let (a, b) = (f(a), f(b));
        for conn in [Connective::And, Connective::Or, Connective::DynImp, Connective::HeytImp] {
            for n in 0..=GOLDEN_MAX_EXPONENT {
                let lhs = Formula::binary(conn, a.clone(), b.clone()).nabla_n(n);
                let rhs = Formula::binary(conn, a.clone().nabla_n(n), b.clone().nabla_n(n));
                provable.push(Sequent::new(Multiset::singleton(lhs), Some(rhs)));
            }
        }
    }
    for s in &provable {
        golden_provable(s, &mut slowest)?;
        count += 1;
    }
    for s in ["p |- #p", "#p |- p", "|- p | (p -> F)", "#p => #q |- #(p => q)"] {
        golden_unprovable(&seq(s), &mut slowest)?;
        count += 1;
    }
    // The forward direction of the ⊃ distribution is provable; the oracle
    // must agree before it is asserted.
    let forward = seq("#(p => q) |- #p => #q");
    ensure(
        matches!(
            refute(&forward, GOLDEN_MAX_ALGEBRA, true).unwrap(),
            Refutation::NotFoundWithinBound
        ),
        || "the oracle refutes the provable ⊃ direction".into(),
    )?;
    golden_provable(&forward, &mut slowest)?;
    count += 1;
    Ok(format!("{count} sequents, slowest {slowest:?}"))
}

/// The STL corpus shared by criteria 2 and 4, half of it ⊃-free, keeping
/// only proofs within the height bound.
fn stl_corpus() -> Vec<(ProofTree, ProofShape)> {
    let mut r = rng(2);
    let mut out = Vec::new();
    while out.len() < STL_CORPUS {
        let shape = proof_shape(out.len() % 2 == 0);
        let t = gen::stl_proof(&mut r, &shape);
        if t.height() <= STL_MAX_HEIGHT {
            out.push((t, shape));
        }
    }
    out
}

fn criterion_2(corpus: &[(ProofTree, ProofShape)]) -> Verdict {
    let start = Instant::now();
    let (mut cuts, mut tallest) = (0, 0);
    for (t, shape) in corpus {
        let source = gen::stl_calculus(shape);
        check_proof(t, source).map_err(|e| format!("generated proof fails: {e}"))?;
        ensure(t.height() <= STL_MAX_HEIGHT, || {
            format!("generated height {}", t.height())
        })?;
        cuts += usize::from(!t.is_cut_free());
        tallest = tallest.max(t.height());
        let out = stl_to_ikd(t).map_err(|e| format!("`{}`: {e}", t.sequent()))?;
        let target = if shape.formulas.heyting {
            CalculusId::ikd()
        } else {
            CalculusId::ikds()
        };
        ensure(out.is_cut_free(), || format!("`{}` kept a cut", t.sequent()))?;
        check_proof(&out, target).map_err(|e| format!("`{}`: {e}", t.sequent()))?;
        ensure(out.sequent() == t.sequent(), || {
            format!("`{}` changed endsequent", t.sequent())
        })?;
    }
    let took = start.elapsed();
    ensure(took <= STL_TIME_LIMIT, || format!("took {took:?}"))?;
    Ok(format!(
        "{} proofs, {cuts} with cuts, tallest {tallest}, {took:?}",
        corpus.len()
    ))
}

fn criterion_3() -> Verdict {
    let mut r = rng(3);
    let (mut inversions, mut contractions) = (0, 0);
    for i in 0..HEIGHT_CORPUS {
        let t = gen::ikd_proof(&mut r, &proof_shape(i % 2 == 0));
        for a in t.sequent().antecedent.distinct() {
            let Ok(inv) = invert(&t, a) else { continue };
            let outs = match inv {
                Inversion::Single(x) => vec![x],
                Inversion::Pair(x, y) => vec![x, y],
            };
            for o in outs {
                ensure(o.height() <= t.height(), || {
                    format!("inverting `{a}` grew `{}`", t.sequent())
                })?;
                check_proof(&o, CalculusId::ikd()).map_err(|e| format!("inverting `{a}`: {e}"))?;
                inversions += 1;
            }
        }
        let ant = t.sequent().antecedent.as_slice();
        if ant.is_empty() {
            continue;
        }
        let a = ant[r.gen_range(0..ant.len())].clone();
        let dup = gen::spread_weakening(&t, &Multiset::singleton(a.clone()));
        let out = contract(&dup, &a).map_err(|e| format!("contracting `{a}`: {e}"))?;
        ensure(out.height() <= dup.height(), || {
            format!("contracting `{a}` grew the proof")
        })?;
        check_proof(&out, CalculusId::ikd()).map_err(|e| format!("contracting `{a}`: {e}"))?;
        ensure(out.sequent() == t.sequent(), || {
            format!("contracting `{a}` changed the endsequent")
        })?;
        contractions += 1;
    }
    Ok(format!(
        "{HEIGHT_CORPUS} proofs, {inversions} inversions, {contractions} contractions"
    ))
}

fn criterion_4(corpus: &[(ProofTree, ProofShape)]) -> Verdict {
    for (t, shape) in corpus {
        let back = ikd_to_stl(&stl_to_ikd(t).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        check_proof(&back, gen::stl_calculus(shape)).map_err(|e| format!("`{}`: {e}", t.sequent()))?;
        ensure(back.sequent() == t.sequent(), || {
            format!("`{}` changed endsequent", t.sequent())
        })?;
    }
    Ok(format!("{} proofs", corpus.len()))
}

fn criterion_5() -> Verdict {
    let start = Instant::now();
    let algebras = enumerate_algebras(ORACLE_MAX_ALGEBRA, true).map_err(|e| e.to_string())?;
    let mut r = rng(5);
    let shape = FormulaShape::new(&["p", "q"], ORACLE_FORMULA_DEPTH, true);
    let mut found_count = 0;
    for _ in 0..ORACLE_CORPUS {
        let s = gen::sequent(&mut r, &shape, ORACLE_MAX_ANTECEDENT);
        let Some(t) = found(&s, CalculusId::ikd(), ORACLE_BUDGET) else {
            continue;
        };
        check_proof(&t, CalculusId::ikd()).map_err(|e| format!("`{s}`: {e}"))?;
        found_count += 1;
        if let Refutation::Countermodel(c) = refute_in(&s, &algebras).map_err(|e| e.to_string())? {
            return Err(format!(
                "found `{s}` is refuted in an algebra of size {}",
                c.algebra.size
            ));
        }
    }
    let took = start.elapsed();
    ensure(found_count >= ORACLE_MIN_FOUND, || format!("only {found_count} found"))?;
    ensure(took <= ORACLE_TIME_LIMIT, || format!("took {took:?}"))?;
    Ok(format!(
        "{ORACLE_CORPUS} sequents, {found_count} found, {} algebras, 0 counterexamples, {took:?}",
        algebras.len()
    ))
}

fn atoms_of(fs: &[&Formula]) -> BTreeSet<Arc<str>> {
    fs.iter().flat_map(|x| x.atoms()).collect()
}

fn criterion_6() -> Verdict {
    let mut r = rng(6);
    let mut done = 0;
    while done < INTERPOLATION_CORPUS {
        let heyting = r.gen_bool(0.5);
        let t = gen::ikd_proof(&mut r, &proof_shape(heyting));
        let s = t.sequent().clone();
        let ant = s.antecedent.as_slice();
        let left: Vec<usize> = (0..ant.len()).filter(|_| r.gen_bool(0.5)).collect();
        let res = interpolate(&t, &left).map_err(|e| format!("`{s}` {left:?}: {e}"))?;
        let (l, rt): (Vec<&Formula>, Vec<&Formula>) = {
            let (a, b): (Vec<_>, Vec<_>) = ant.iter().enumerate().partition(|(i, _)| left.contains(i));
            (
                a.into_iter().map(|x| x.1).collect(),
                b.into_iter().map(|x| x.1).collect(),
            )
        };
        let c = &res.interpolant;
        let mut right_side = rt.clone();
        right_side.extend(s.succedent.as_ref());
        let shared: BTreeSet<_> = atoms_of(&l).intersection(&atoms_of(&right_side)).cloned().collect();
        ensure(c.atoms().is_subset(&shared), || {
            format!("`{s}` {left:?}: `{c}` leaks atoms")
        })?;
        let want_l = Sequent::new(l.iter().map(|x| (*x).clone()).collect::<Multiset>(), Some(c.clone()));
        let mut ant_r: Multiset = rt.iter().map(|x| (*x).clone()).collect();
        ant_r.insert(c.clone());
        let want_r = Sequent::new(ant_r, s.succedent.clone());
        ensure(res.left_proof.sequent() == &want_l, || {
            format!("`{s}`: left proof of `{}`", res.left_proof.sequent())
        })?;
        ensure(res.right_proof.sequent() == &want_r, || {
            format!("`{s}`: right proof of `{}`", res.right_proof.sequent())
        })?;
        check_proof(&res.left_proof, CalculusId::ikd()).map_err(|e| format!("`{s}` left: {e}"))?;
        check_proof(&res.right_proof, CalculusId::ikd()).map_err(|e| format!("`{s}` right: {e}"))?;
        done += 1;
    }
    for (a, b, want) in [("p", "p", "p"), ("F", "p", "F"), ("p", "T", "T")] {
        match interpolate_formula(&f(a), &f(b), META_BUDGET).map_err(|e| e.to_string())? {
            FormulaInterpolation::Interpolant(res) => ensure(res.interpolant == f(want), || {
                format!("({a}, {b}) gave `{}`", res.interpolant)
            })?,
            FormulaInterpolation::Exhausted(_) => return Err(format!("`{a} |- {b}` not found")),
        }
    }
    Ok(format!("{done} partitioned proofs, 3 base cases"))
}

fn criterion_7() -> Verdict {
    let mut r = rng(7);
    let shape = FormulaShape::new(&["p", "q", "r"], 2, true);
    let (mut split, mut attempts) = (0, 0);
    while split < DISJUNCTION_CORPUS {
        attempts += 1;
        ensure(attempts <= MAX_ATTEMPTS, || {
            format!("only {split} provable disjunctions")
        })?;
        let (mut a, mut b) = (gen::formula(&mut r, &shape), gen::formula(&mut r, &shape));
        if r.gen_bool(0.5) {
            let x = gen::formula(&mut r, &shape);
            let theorem = match r.gen_range(0..3) {
                0 => Formula::dyn_imp(x.clone(), x),
                1 => Formula::heyt_imp(x.clone(), x),
                _ => Formula::nabla(Formula::Top),
            };
            if r.gen_bool(0.5) {
                a = theorem;
            } else {
                b = theorem;
            }
        }
        let goal = Sequent::theorem(Formula::or(a.clone(), b.clone()));
        let Some(t) = found(&goal, CalculusId::ikd(), META_BUDGET) else {
            continue;
        };
        let (p, want) = match split_disjunction(&t).map_err(|e| format!("`{goal}`: {e}"))? {
            Disjunct::Left(p) => (p, a),
            Disjunct::Right(p) => (p, b),
        };
        check_proof(&p, CalculusId::ikd()).map_err(|e| format!("`{goal}`: {e}"))?;
        ensure(p.sequent() == &Sequent::theorem(want), || {
            format!("`{goal}` split to `{}`", p.sequent())
        })?;
        split += 1;
    }
    let mut verdicts = Vec::new();
    for which in 0..3 {
        let (mut done, mut attempts) = (0, 0);
        while done < VISSER_CORPUS {
            attempts += 1;
            ensure(attempts <= MAX_ATTEMPTS, || {
                format!("family {which}: only {done} provable instances")
            })?;
            let k = r.gen_range(0..=VISSER_MAX_K);
            let family = match which {
                0 => VisserFamily::Disjunctive,
                1 => VisserFamily::Implicative(k),
                _ => VisserFamily::Heyting(k),
            };
            let (x, s) = gen::visser_instance(&mut r, &shape, family);
            let Some(t) = found(&s, CalculusId::ikd(), META_BUDGET) else {
                continue;
            };
            let goal = s.succedent.clone().unwrap();
            let (e, g, v) = match family {
                VisserFamily::Disjunctive => {
                    let Formula::Or(e, g) = &goal else { unreachable!() };
                    (e.as_ref().clone(), g.as_ref().clone(), visser_disjunctive(&t, &x))
                }
                VisserFamily::Implicative(k) => {
                    let Some(Formula::DynImp(e, g)) = goal.peel_nabla(k) else {
                        unreachable!()
                    };
                    (e.as_ref().clone(), g.as_ref().clone(), visser_implicative(&t, &x, k))
                }
                VisserFamily::Heyting(k) => {
                    let Some(Formula::HeytImp(e, g)) = goal.peel_nabla(k) else {
                        unreachable!()
                    };
                    (e.as_ref().clone(), g.as_ref().clone(), visser_heyting(&t, &x, k))
                }
            };
            let v = v.map_err(|err| format!("`{s}`: {err}"))?;
            check_proof(v.proof(), CalculusId::ikd()).map_err(|err| format!("`{s}` {}: {err}", v.kind()))?;
            let want = x.verdict_sequent(family, &e, &g, &v);
            ensure(want.as_ref() == Some(v.proof().sequent()), || {
                format!("`{s}` {}: proof of `{}`", v.kind(), v.proof().sequent())
            })?;
            done += 1;
        }
        verdicts.push(done);
    }
    Ok(format!("{split} disjunctions, Visser {verdicts:?} (disj, imp, heyt)"))
}

fn criterion_8() -> Verdict {
    let mut r = rng(8);
    let mut sigma_total = 0;
    for i in 0..DEDUCTION_CORPUS {
        let sh = proof_shape(i % 2 == 0);
        let a = gen::formula(&mut r, &sh.formulas);
        let t = gen::hypothesis_proof(&mut r, &a, &sh);
        check_proof(&t, CalculusId::ikd().with_cut(true).with_hypotheses(true)).map_err(|e| e.to_string())?;
        let out = deduction_export(&t, &a).map_err(|e| format!("`{}` from `{a}`: {e}", t.sequent()))?;
        check_proof(&out.proof, CalculusId::ikd()).map_err(|e| format!("export of `{}`: {e}", t.sequent()))?;
        ensure(out.sigma.iter().all(|b| b.variant_path(&a).is_some()), || {
            format!("Σ is not made of variants of `{a}`")
        })?;
        let want = t.sequent().with_antecedent(t.sequent().antecedent.union(&out.sigma));
        ensure(out.proof.sequent() == &want, || {
            format!("export proved `{}`", out.proof.sequent())
        })?;
        let back = deduction_import(&a, &out.sigma, &out.proof).map_err(|e| e.to_string())?;
        check_proof(&back, CalculusId::ikd().with_cut(true).with_hypotheses(true)).map_err(|e| e.to_string())?;
        ensure(back.sequent() == t.sequent(), || {
            format!("import proved `{}`", back.sequent())
        })?;
        let hyp = Sequent::theorem(a.clone());
        ensure(back.hypotheses().iter().all(|h| **h == hyp), || {
            "import used a foreign hypothesis".into()
        })?;
        sigma_total += out.sigma.len();
    }
    Ok(format!("{DEDUCTION_CORPUS} proofs, {sigma_total} discharged variants"))
}

fn criterion_9() -> Verdict {
    let mut r = rng(9);
    let shape = FormulaShape::new(&["p", "q", "r"], 3, false);
    let mut corpus = Vec::new();
    for i in 0..CONSERVATIVITY_CORPUS {
        let s = if i % 2 == 0 {
            gen::sequent(&mut r, &shape, 3)
        } else {
            gen::stl_proof(&mut r, &proof_shape(false)).sequent().clone()
        };
        corpus.push(s);
    }
    let mut provable = 0;
    for s in &corpus {
        ensure(s.is_heyting_free(), || format!("`{s}` mentions ⊃"))?;
        let full = found(s, CalculusId::ikd(), CONSERVATIVITY_BUDGET);
        let star = found(s, CalculusId::ikds(), CONSERVATIVITY_BUDGET);
        ensure(full.is_some() == star.is_some(), || format!("`{s}`: calculi disagree"))?;
        if let (Some(t), Some(u)) = (full, star) {
            ensure(!t.uses_heyting_rule(), || format!("`{s}`: iK_d proof uses a ⊃ rule"))?;
            check_proof(&u, CalculusId::ikds()).map_err(|e| format!("`{s}`: {e}"))?;
            provable += 1;
        }
    }
    Ok(format!("{} sequents, {provable} provable in both", corpus.len()))
}

fn main() -> ExitCode {
    let corpus = stl_corpus();
    let criteria: Vec<(usize, Box<dyn Fn() -> Verdict + '_>)> = vec![
        (1, Box::new(criterion_1)),
        (2, Box::new(|| criterion_2(&corpus))),
        (3, Box::new(criterion_3)),
        (4, Box::new(|| criterion_4(&corpus))),
        (5, Box::new(criterion_5)),
        (6, Box::new(criterion_6)),
        (7, Box::new(criterion_7)),
        (8, Box::new(criterion_8)),
        (9, Box::new(criterion_9)),
    ];
    let mut failed = 0;
    for (n, run) in criteria {
        match run() {
            Ok(detail) => println!("criterion {n}: PASS ({detail})"),
            Err(why) => {
                failed += 1;
                println!("criterion {n}: FAIL ({why})");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
